#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "theodorus/complex_interval.hpp"

namespace theodorus {

// Outer point of the square-root spiral: z_n together with the cumulative
// angle theta(n) = sum_{k=1}^{n-1} arctan(1/sqrt(k)), never reduced mod 2pi.
struct SpiralPoint {
    std::int64_t index = 1;
    ComplexInterval z;
    Interval angle;
};

// Per-precision cache of the cumulative angles. Entries are append-only for
// a fixed precision: concurrent reads share the lock, extension is serialized.
class AnglePrefixTable {
public:
    explicit AnglePrefixTable(Precision p);

    Precision precision() const { return p_; }

    // Enclosure of theta(n), extending the table on demand. n >= 1.
    Interval at(std::int64_t n);

    std::int64_t size() const;

    // Shared table for a precision; one instance per bit width process-wide.
    static std::shared_ptr<AnglePrefixTable> for_precision(Precision p);

private:
    void extend_to(std::int64_t n);

    Precision p_;
    mutable std::shared_mutex mu_;
    std::vector<Interval> entries_;  // entries_[i] encloses theta(i + 1)
};

// Enclosure of the product factor 1 + i/sqrt(k).
ComplexInterval spiral_factor(std::int64_t k, Precision p);

// One construction step: z + i*z/|z|. Throws OriginInEnclosure when the
// modulus-squared enclosure touches zero.
ComplexInterval next_point(const ComplexInterval& z, Precision p);

// z_n as the left-to-right product of spiral_factor(k) for k = 1..n-1,
// outward-rounded each step, with the cached cumulative angle.
// Throws InvalidIndex when n < 1.
//
// Accumulated products and iterated construction steps both rotate their
// operand, and axis-aligned boxes widen by roughly e^(1/sqrt(k)) per factor
// under rotation regardless of the working precision. All accumulating
// walkers below therefore run internally with sqrt-of-horizon guard bits
// and outward-round to the requested precision only when a box is emitted.
SpiralPoint point_by_product(std::int64_t n, Precision p);

// Enclosures of z_1..z_max_n from one pass of the product formula, each
// rounded to p. Throws InvalidIndex when max_n < 1.
std::vector<SpiralPoint> spiral_points(std::int64_t max_n, Precision p);

// Enclosures of z_1..z_max_n from iterating the construction step, each
// rounded to p: the differential companion of spiral_points, reaching the
// same points through entirely different arithmetic. Throws InvalidIndex
// when max_n < 1.
std::vector<ComplexInterval> recurrence_orbit(std::int64_t max_n, Precision p);

// Enclosure of theta(n), served from the shared per-precision table.
// Throws InvalidIndex when n < 1.
Interval angle_prefix(std::int64_t n, Precision p);

// Enclosure of re^2 + im^2.
Interval modulus_sq(const ComplexInterval& z, Precision p);

// Smallest n whose cumulative angle is certified strictly above 2*pi*r.
// Escalates the working precision (doubling, capped) when an enclosure
// straddles the target. Throws InvalidIndex when r < 1, PrecisionExhausted
// when the comparison is still undecided at the cap.
std::int64_t revolution_index(std::int64_t r, Precision p,
                              int precision_cap = kMaxPrecisionBits);

}  // namespace theodorus

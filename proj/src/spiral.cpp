#include "theodorus/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "theodorus/errors.hpp"

namespace theodorus {

namespace {

Interval one() { return Interval::point(1); }

void require_index(std::int64_t n) {
    if (n < 1) throw InvalidIndex("spiral index must be at least 1");
}

// Width amplification under rotation is about e^(sum 1/sqrt(k)) for the
// product accumulation (2.89*sqrt(n) bits) and about 1.6x that for the
// construction step, whose modulus is re-derived from the box each time.
// The multipliers below cover both with slack that grows with the horizon.
constexpr double kProductGuardPerSqrt = 4.0;
constexpr double kRecurrenceGuardPerSqrt = 6.5;

Precision guarded(Precision p, double per_sqrt, std::int64_t horizon) {
    const int guard = static_cast<int>(
                          per_sqrt * std::sqrt(static_cast<double>(horizon))) +
                      48;
    return Precision::unchecked(p.bits + guard);
}

ComplexInterval round_to(const ComplexInterval& z, Precision p) {
    return ComplexInterval(round_out(z.re, p), round_out(z.im, p));
}

}  // namespace

AnglePrefixTable::AnglePrefixTable(Precision p) : p_(p) {
    entries_.push_back(Interval());  // theta(1) = 0, the empty sum
}

Interval AnglePrefixTable::at(std::int64_t n) {
    require_index(n);
    {
        std::shared_lock<std::shared_mutex> lock(mu_);
        if (n <= static_cast<std::int64_t>(entries_.size())) {
            return entries_[static_cast<std::size_t>(n - 1)];
        }
    }
    std::unique_lock<std::shared_mutex> lock(mu_);
    extend_to(n);
    return entries_[static_cast<std::size_t>(n - 1)];
}

std::int64_t AnglePrefixTable::size() const {
    std::shared_lock<std::shared_mutex> lock(mu_);
    return static_cast<std::int64_t>(entries_.size());
}

void AnglePrefixTable::extend_to(std::int64_t n) {
    while (static_cast<std::int64_t>(entries_.size()) < n) {
        const std::int64_t m = static_cast<std::int64_t>(entries_.size());
        const Interval inv_sqrt =
            iv_div(one(), iv_sqrt(Interval::point(m), p_), p_);
        entries_.push_back(iv_add(entries_.back(), iv_atan(inv_sqrt, p_), p_));
    }
}

std::shared_ptr<AnglePrefixTable> AnglePrefixTable::for_precision(Precision p) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<AnglePrefixTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = tables[p.bits];
    if (!slot) slot = std::make_shared<AnglePrefixTable>(p);
    return slot;
}

ComplexInterval spiral_factor(std::int64_t k, Precision p) {
    require_index(k);
    const Interval im = iv_div(one(), iv_sqrt(Interval::point(k), p), p);
    return ComplexInterval(one(), im);
}

Interval modulus_sq(const ComplexInterval& z, Precision p) {
    return iv_add(iv_sqr(z.re, p), iv_sqr(z.im, p), p);
}

ComplexInterval next_point(const ComplexInterval& z, Precision p) {
    const Interval msq = modulus_sq(z, p);
    if (msq.lo().sign() <= 0) throw OriginInEnclosure();
    const Interval r = iv_sqrt(msq, p);
    // z + i*z/|z|: the unit normal to z is (-im/|z|, re/|z|).
    const Interval re = iv_sub(z.re, iv_div(z.im, r, p), p);
    const Interval im = iv_add(z.im, iv_div(z.re, r, p), p);
    return ComplexInterval(re, im);
}

SpiralPoint point_by_product(std::int64_t n, Precision p) {
    require_index(n);
    const Precision w = guarded(p, kProductGuardPerSqrt, n);
    ComplexInterval z = ComplexInterval::point(1, 0);
    for (std::int64_t k = 1; k < n; ++k) {
        z = c_mul(z, spiral_factor(k, w), w);
    }
    return SpiralPoint{n, round_to(z, p), angle_prefix(n, p)};
}

std::vector<SpiralPoint> spiral_points(std::int64_t max_n, Precision p) {
    require_index(max_n);
    const Precision w = guarded(p, kProductGuardPerSqrt, max_n);
    std::vector<SpiralPoint> points;
    points.reserve(static_cast<std::size_t>(max_n));
    ComplexInterval z = ComplexInterval::point(1, 0);
    for (std::int64_t n = 1; n <= max_n; ++n) {
        if (n > 1) z = c_mul(z, spiral_factor(n - 1, w), w);
        points.push_back(SpiralPoint{n, round_to(z, p), angle_prefix(n, p)});
    }
    return points;
}

std::vector<ComplexInterval> recurrence_orbit(std::int64_t max_n, Precision p) {
    require_index(max_n);
    const Precision w = guarded(p, kRecurrenceGuardPerSqrt, max_n);
    std::vector<ComplexInterval> boxes;
    boxes.reserve(static_cast<std::size_t>(max_n));
    ComplexInterval z = ComplexInterval::point(1, 0);
    boxes.push_back(z);
    for (std::int64_t n = 2; n <= max_n; ++n) {
        z = next_point(z, w);
        boxes.push_back(round_to(z, p));
    }
    return boxes;
}

Interval angle_prefix(std::int64_t n, Precision p) {
    require_index(n);
    return AnglePrefixTable::for_precision(p)->at(n);
}

std::int64_t revolution_index(std::int64_t r, Precision p, int precision_cap) {
    if (r < 1) throw InvalidIndex("revolution count must be at least 1");
    const int cap = std::min(precision_cap, kMaxPrecisionBits);
    int bits = std::min(p.bits, cap);
    for (std::int64_t n = 1;; ++n) {
        for (;;) {
            const Precision working = Precision::unchecked(bits);
            const Interval angle = angle_prefix(n, working);
            const Interval target =
                iv_mul(iv_scale2(iv_pi(working), 1), Interval::point(r), working);
            if (angle.lo() > target.hi()) return n;   // certified above
            if (angle.hi() < target.lo()) break;      // certified below, advance n
            if (bits >= cap) {
                throw PrecisionExhausted(
                    "revolution boundary undecided at the precision cap");
            }
            bits = std::min(2 * bits, cap);
        }
    }
}

}  // namespace theodorus

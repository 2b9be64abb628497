#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "theodorus/spiral.hpp"

namespace theodorus {

enum class WindowStatus { Certified, Unresolved };

// Certificate that the window angle sum_{k=m}^{n-1} arctan(1/sqrt(k)) stays
// away from every integer multiple of pi. Certified attests margin.lo > 0:
// the two hypotenuses cannot lie on one line, so no real proportionality
// factor exists for the pair.
struct WindowCertificate {
    std::int64_t m = 0;
    std::int64_t n = 0;
    Interval theta;
    std::int64_t nearest_q = 0;
    Interval margin;
    int precision_bits = 0;
    WindowStatus status = WindowStatus::Unresolved;
};

struct CertificationReport {
    std::int64_t bound = 0;  // N: windows range over 1 <= m < n <= N
    std::int64_t windows_total = 0;
    std::int64_t certified = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> unresolved;
    std::pair<std::int64_t, std::int64_t> min_margin_window{0, 0};
    Dyadic min_margin_lo;
    std::vector<int> precision_schedule;
};

enum class ImSign { Positive, Negative, StraddlesZeroAtCap };

// A window whose product has a non-positive imaginary-part enclosure: a
// counterexample to reading "imaginary part zero forces the angle sum to
// vanish" literally once window angles pass pi.
struct AuditFinding {
    std::int64_t m = 0;
    std::int64_t n = 0;
    Interval im_enclosure;
    ImSign verdict = ImSign::StraddlesZeroAtCap;
};

// Doubling schedule 64, 128, ..., 8192 bits.
std::vector<Precision> default_schedule();

// Enclosure of theta(n) - theta(m) from the shared prefix table.
// Throws InvalidWindow unless 1 <= m < n.
Interval window_angle(std::int64_t m, std::int64_t n, Precision p);

// q minimizing the distance from theta to q*pi, with an enclosure of
// min over integers q >= 0 of |theta - q*pi|. Requires theta.lo >= 0.
// When theta spans the midpoint between two multiples, both candidates
// contribute and the pointwise-minimum enclosure is returned.
std::pair<std::int64_t, Interval> nearest_pi_multiple(const Interval& theta,
                                                      Precision p);

// Walks the precision schedule until margin.lo > 0 (Certified, recording the
// first succeeding precision) or the schedule is exhausted (Unresolved).
WindowCertificate certify_window(std::int64_t m, std::int64_t n,
                                 const std::vector<Precision>& schedule);

// Certifies every window 1 <= m < n <= N. The report is bit-identical for
// any worker count: windows are chunked lexicographically and merged in
// order. Throws InvalidBound when N < 2.
CertificationReport certify_all(std::int64_t N,
                                const std::vector<Precision>& schedule,
                                int workers = 1);

// Box enclosure of the product of spiral_factor(k) for k = m..n-1,
// accumulated left to right. Throws InvalidWindow unless 1 <= m < n.
ComplexInterval window_product(std::int64_t m, std::int64_t n, Precision p);

// Every window (m, n) with n <= N whose product's imaginary-part enclosure
// is not strictly positive, in lexicographic order. Enclosures that straddle
// zero at precision p are reported, never dropped. Throws InvalidBound when
// N < 2.
std::vector<AuditFinding> audit_im_sign(std::int64_t N, Precision p);

}  // namespace theodorus

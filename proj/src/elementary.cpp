#include <cassert>
#include <map>
#include <mutex>

#include "theodorus/interval.hpp"

namespace theodorus {

namespace {

constexpr int kGuardBits = 64;

Interval one() { return Interval::point(1); }

// Enclosure of arctan over an interval y within [0, ~0.21]: Maclaurin
// partial sums plus the alternating-series tail, which is bounded by the
// first omitted term since |y| < 1 keeps the terms decreasing.
Interval atan_maclaurin(const Interval& y, Precision w) {
    const Interval y2 = iv_sqr(y, w);
    Interval power = y;  // y^(2j+1)
    Interval sum = y;
    std::int64_t j = 1;
    const std::int64_t cutoff = -static_cast<std::int64_t>(w.bits) - 2;
    while (!power.hi().magnitude_at_most_pow2(cutoff)) {
        power = iv_mul(power, y2, w);
        const Interval term = iv_div(power, Interval::point(Dyadic(2 * j + 1)), w);
        sum = (j % 2 == 1) ? iv_sub(sum, term, w) : iv_add(sum, term, w);
        ++j;
        assert(j < 4 * w.bits);
    }
    // First omitted term magnitude is at most power.hi * y2.hi (exact product).
    const Dyadic tail = power.hi() * y2.hi();
    return iv_add(sum, Interval(-tail, tail), w);
}

// x <- x / (1 + sqrt(1 + x^2)), halving the arctangent.
Interval halve_argument(const Interval& x, Precision w) {
    const Interval hyp = iv_sqrt(iv_add(one(), iv_sqr(x, w), w), w);
    return iv_div(x, iv_add(one(), hyp, w), w);
}

// arctan over an interval within [0, 1]: two halvings, series, times four.
Interval atan_unit(const Interval& x, int bits) {
    const Precision w = Precision::unchecked(bits + kGuardBits);
    const Interval y = halve_argument(halve_argument(x, w), w);
    return round_out(iv_scale2(atan_maclaurin(y, w), 2), Precision::unchecked(bits));
}

Interval pi_enclosure(int bits);

// Certified arctan of one exact dyadic.
Interval atan_point(const Dyadic& x, int bits) {
    if (x.is_zero()) return Interval();
    if (x.sign() < 0) return iv_neg(atan_point(-x, bits));
    if (x > Dyadic(1)) {
        const int w = bits + kGuardBits;
        const Precision pw = Precision::unchecked(w);
        const Interval half_pi = iv_scale2(pi_enclosure(w), -1);
        const Interval inv = iv_div(one(), Interval::point(x), pw);
        const Interval at = Interval(atan_point(inv.lo(), w).lo(),
                                     atan_point(inv.hi(), w).hi());
        return round_out(iv_sub(half_pi, at, pw), Precision::unchecked(bits));
    }
    return atan_unit(Interval::point(x), bits);
}

Interval atan_endpoints(const Interval& a, int bits) {
    if (a.is_point()) return atan_point(a.lo(), bits);
    return Interval(atan_point(a.lo(), bits).lo(), atan_point(a.hi(), bits).hi());
}

// pi = 16 arctan(1/5) - 4 arctan(1/239), both arguments inside the series
// branch, so the identity bottoms out in one audited kernel.
Interval pi_enclosure(int bits) {
    static std::mutex mu;
    static std::map<int, Interval> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(bits);
        if (it != cache.end()) return it->second;
    }
    const Precision w = Precision::unchecked(bits + kGuardBits);
    const Interval a5 = atan_endpoints(iv_div(one(), Interval::point(5), w), w.bits);
    const Interval a239 = atan_endpoints(iv_div(one(), Interval::point(239), w), w.bits);
    const Interval pi = round_out(iv_sub(iv_scale2(a5, 4), iv_scale2(a239, 2), w),
                                  Precision::unchecked(bits));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(bits, pi);
    return pi;
}

}  // namespace

Interval iv_atan(const Interval& a, Precision p) {
    return atan_endpoints(a, p.bits);
}

Interval iv_pi(Precision p) { return pi_enclosure(p.bits); }

}  // namespace theodorus

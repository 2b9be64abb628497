#include "theodorus/interval.hpp"

#include <algorithm>

namespace theodorus {

Interval round_out(const Interval& a, Precision p) {
    return Interval(a.lo().rounded(p.bits, RoundDir::Down),
                    a.hi().rounded(p.bits, RoundDir::Up));
}

Interval iv_neg(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval iv_abs(const Interval& a) {
    if (a.lo().sign() >= 0) return a;
    if (a.hi().sign() <= 0) return iv_neg(a);
    return Interval(Dyadic(), std::max(-a.lo(), a.hi()));
}

Interval iv_scale2(const Interval& a, std::int64_t k) {
    return Interval(a.lo().mul_pow2(k), a.hi().mul_pow2(k));
}

Interval iv_add(const Interval& a, const Interval& b, Precision p) {
    return round_out(Interval(a.lo() + b.lo(), a.hi() + b.hi()), p);
}

Interval iv_mul(const Interval& a, const Interval& b, Precision p) {
    const Dyadic p1 = a.lo() * b.lo();
    const Dyadic p2 = a.lo() * b.hi();
    const Dyadic p3 = a.hi() * b.lo();
    const Dyadic p4 = a.hi() * b.hi();
    const Dyadic lo = std::min(std::min(p1, p2), std::min(p3, p4));
    const Dyadic hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return round_out(Interval(lo, hi), p);
}

Interval iv_sqr(const Interval& a, Precision p) {
    const Dyadic l2 = a.lo() * a.lo();
    const Dyadic h2 = a.hi() * a.hi();
    Interval exact;
    if (a.lo().sign() >= 0) {
        exact = Interval(l2, h2);
    } else if (a.hi().sign() <= 0) {
        exact = Interval(h2, l2);
    } else {
        exact = Interval(Dyadic(), std::max(l2, h2));
    }
    return round_out(exact, p);
}

Interval iv_div(const Interval& a, const Interval& b, Precision p) {
    if (b.contains_zero()) throw DivisorContainsZero();
    Dyadic lo, hi;
    bool first = true;
    for (const Dyadic* x : {&a.lo(), &a.hi()}) {
        for (const Dyadic* y : {&b.lo(), &b.hi()}) {
            const Dyadic qd = div_dir(*x, *y, p.bits, RoundDir::Down);
            const Dyadic qu = div_dir(*x, *y, p.bits, RoundDir::Up);
            if (first) {
                lo = qd;
                hi = qu;
                first = false;
            } else {
                lo = std::min(lo, qd);
                hi = std::max(hi, qu);
            }
        }
    }
    return Interval(lo, hi);
}

Interval iv_sqrt(const Interval& a, Precision p) {
    if (a.lo().sign() < 0) throw NegativeRadicand();
    return Interval(sqrt_dir(a.lo(), p.bits, RoundDir::Down),
                    sqrt_dir(a.hi(), p.bits, RoundDir::Up));
}

std::pair<std::string, std::string> to_decimal(const Interval& a, int digits) {
    return {to_decimal(a.lo(), digits, RoundDir::Down),
            to_decimal(a.hi(), digits, RoundDir::Up)};
}

}  // namespace theodorus

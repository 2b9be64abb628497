#pragma once

#include <utility>

#include "theodorus/interval.hpp"

namespace theodorus {

// Rectangular enclosure of a complex value: the target lies in re x im.
struct ComplexInterval {
    Interval re;
    Interval im;

    ComplexInterval() = default;
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    static ComplexInterval point(long r, long i) {
        return ComplexInterval(Interval::point(r), Interval::point(i));
    }
};

inline ComplexInterval c_add(const ComplexInterval& a, const ComplexInterval& b,
                             Precision p) {
    return ComplexInterval(iv_add(a.re, b.re, p), iv_add(a.im, b.im, p));
}

// (a + bi)(c + di) = (ac - bd) + (ad + bc)i, each part outward-rounded.
inline ComplexInterval c_mul(const ComplexInterval& a, const ComplexInterval& b,
                             Precision p) {
    const Interval ac = iv_mul(a.re, b.re, p);
    const Interval bd = iv_mul(a.im, b.im, p);
    const Interval ad = iv_mul(a.re, b.im, p);
    const Interval bc = iv_mul(a.im, b.re, p);
    return ComplexInterval(iv_sub(ac, bd, p), iv_add(ad, bc, p));
}

inline bool c_contains_zero(const ComplexInterval& a) {
    return a.re.contains_zero() && a.im.contains_zero();
}

}  // namespace theodorus

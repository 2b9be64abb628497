#pragma once

#include <string>
#include <utility>

#include "theodorus/dyadic.hpp"
#include "theodorus/errors.hpp"

namespace theodorus {

inline constexpr int kMinPrecisionBits = 16;
inline constexpr int kMaxPrecisionBits = 8192;

// Working mantissa width for outward rounding.
struct Precision {
    int bits;

    explicit Precision(int b) : bits(checked(b)) {}

    // Guard precisions used inside the elementary kernels may exceed the
    // public cap; everything user-facing goes through the checked ctor.
    static Precision unchecked(int b) noexcept { return Precision(b, Unchecked{}); }

private:
    struct Unchecked {};
    Precision(int b, Unchecked) noexcept : bits(b) {}
    static int checked(int b) {
        if (b < kMinPrecisionBits || b > kMaxPrecisionBits) {
            throw std::invalid_argument("precision bits out of range [16, 8192]");
        }
        return b;
    }
};

// Closed interval [lo, hi] of dyadic rationals. The contract everywhere:
// the exact real an operation targets lies between the endpoints.
class Interval {
public:
    Interval() = default;  // [0, 0]
    Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw std::invalid_argument("interval endpoints out of order");
    }

    static Interval point(Dyadic v) {
        Interval r;
        r.lo_ = v;
        r.hi_ = std::move(v);
        return r;
    }
    static Interval point(long v) { return point(Dyadic(v)); }

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }

    Dyadic width() const { return hi_ - lo_; }
    Dyadic midpoint() const { return (lo_ + hi_).mul_pow2(-1); }

    bool is_point() const { return lo_ == hi_; }
    bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Interval& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool intersects(const Interval& other) const {
        return lo_ <= other.hi_ && other.lo_ <= hi_;
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Dyadic lo_;
    Dyadic hi_;
};

// Enclosing interval with endpoint mantissas of at most p bits:
// lo rounded toward -inf, hi toward +inf. Idempotent.
Interval round_out(const Interval& a, Precision p);

// Exact negation [-hi, -lo].
Interval iv_neg(const Interval& a);

// Exact absolute value enclosure.
Interval iv_abs(const Interval& a);

// Exact scale by 2^k.
Interval iv_scale2(const Interval& a, std::int64_t k);

Interval iv_add(const Interval& a, const Interval& b, Precision p);

// Subtraction is addition of the negation; the two paths agree bit for bit.
inline Interval iv_sub(const Interval& a, const Interval& b, Precision p) {
    return iv_add(a, iv_neg(b), p);
}

Interval iv_mul(const Interval& a, const Interval& b, Precision p);

// Square enclosure; tighter than iv_mul(a, a, p) when a straddles zero.
Interval iv_sqr(const Interval& a, Precision p);

// Throws DivisorContainsZero when 0 lies in b.
Interval iv_div(const Interval& a, const Interval& b, Precision p);

// Throws NegativeRadicand when a.lo < 0.
Interval iv_sqrt(const Interval& a, Precision p);

// Certified arctangent over the whole real line, via endpoint monotonicity.
Interval iv_atan(const Interval& a, Precision p);

// Certified enclosure of pi, width at most 2^(4-p). Cached per precision.
Interval iv_pi(Precision p);

// Decimal endpoint rendering: lo rounded down, hi rounded up.
std::pair<std::string, std::string> to_decimal(const Interval& a, int digits);

}  // namespace theodorus

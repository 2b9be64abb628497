#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace theodorus {

// Rounding direction for any operation that may drop mantissa bits.
enum class RoundDir { Down, Up };  // toward -inf / toward +inf

// Arbitrary-precision binary rational: value = mantissa * 2^exponent.
//
// Canonical form: the mantissa is odd or zero, and zero carries exponent 0.
// Ring operations (+, -, *) and comparisons are exact; precision loss happens
// only through rounded()/div_dir()/sqrt_dir(), which round in a stated
// direction. GMP integers supply the mantissa arithmetic.
class Dyadic {
public:
    Dyadic() = default;  // zero
    Dyadic(long v) : mant_(v), exp_(0) { canonicalize(); }  // NOLINT: implicit by design
    Dyadic(mpz_class mantissa, std::int64_t exponent)
        : mant_(std::move(mantissa)), exp_(exponent) {
        canonicalize();
    }

    const mpz_class& mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }

    bool is_zero() const { return sgn(mant_) == 0; }
    int sign() const { return sgn(mant_); }

    // Bits in |mantissa|; 0 for zero.
    std::size_t bit_length() const {
        return is_zero() ? 0 : mpz_sizeinbase(mant_.get_mpz_t(), 2);
    }

    Dyadic operator-() const;
    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    // Exact scale by 2^k.
    Dyadic mul_pow2(std::int64_t k) const;

    friend bool operator==(const Dyadic& a, const Dyadic& b);
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    // Directed rounding to a mantissa of at most `bits` bits (bits >= 1).
    // Identity when the mantissa already fits.
    Dyadic rounded(int bits, RoundDir dir) const;

    // |*this| <= 2^k, decided conservatively from the bit length alone
    // (never a false positive).
    bool magnitude_at_most_pow2(std::int64_t k) const {
        return is_zero() ||
               static_cast<std::int64_t>(bit_length()) + exp_ <= k;
    }

    // Nearest double, for plotting and diagnostics only.
    double to_double() const;

    // Exact value as a GMP rational.
    mpq_class to_rational() const;

    // Debug form "mantissa*2^exponent".
    std::string to_raw_string() const;

private:
    mpz_class mant_{0};
    std::int64_t exp_{0};

    void canonicalize();
};

// Quotient a/b rounded in `dir` to roughly `bits` significant bits.
// b must be nonzero.
Dyadic div_dir(const Dyadic& a, const Dyadic& b, int bits, RoundDir dir);

// Square root of a >= 0 rounded in `dir`, via the integer square root of the
// mantissa scaled to 2*bits fractional bits, bracketed within 1 ulp.
// Exact perfect squares come back exact in both directions.
Dyadic sqrt_dir(const Dyadic& a, int bits, RoundDir dir);

// Decimal rendering with `digits` significant digits, rounded in `dir`
// (the string, read back as an exact decimal, bounds the value from the
// requested side). Plain notation for moderate magnitudes, exponent
// notation otherwise.
std::string to_decimal(const Dyadic& d, int digits, RoundDir dir);

}  // namespace theodorus

#include "theodorus/dyadic.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace theodorus {

void Dyadic::canonicalize() {
    if (sgn(mant_) == 0) {
        exp_ = 0;
        return;
    }
    const mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_tdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
        exp_ += static_cast<std::int64_t>(tz);
    }
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.mant_ = -mant_;
    r.exp_ = is_zero() ? 0 : exp_;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t e = std::min(a.exp_, b.exp_);
    mpz_class ma = a.mant_;
    mpz_class mb = b.mant_;
    if (a.exp_ > e) mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_ - e));
    if (b.exp_ > e) mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exp_ - e));
    return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

Dyadic Dyadic::mul_pow2(std::int64_t k) const {
    if (is_zero()) return Dyadic();
    Dyadic r;
    r.mant_ = mant_;
    r.exp_ = exp_ + k;
    return r;
}

bool operator==(const Dyadic& a, const Dyadic& b) {
    // Canonical form makes structural equality exact value equality.
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same nonzero sign: compare mantissas aligned to the smaller exponent.
    const std::int64_t e = std::min(a.exp_, b.exp_);
    mpz_class ma = a.mant_;
    mpz_class mb = b.mant_;
    if (a.exp_ > e) mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_ - e));
    if (b.exp_ > e) mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exp_ - e));
    const int c = cmp(ma, mb);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Dyadic Dyadic::rounded(int bits, RoundDir dir) const {
    assert(bits >= 1);
    const std::size_t len = bit_length();
    if (len <= static_cast<std::size_t>(bits)) return *this;
    const mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(len - static_cast<std::size_t>(bits));
    mpz_class q;
    if (dir == RoundDir::Down) {
        mpz_fdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), shift);
    } else {
        mpz_cdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), shift);
    }
    return Dyadic(q, exp_ + static_cast<std::int64_t>(shift));
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    long e2 = 0;
    const double frac = mpz_get_d_2exp(&e2, mant_.get_mpz_t());
    std::int64_t total = static_cast<std::int64_t>(e2) + exp_;
    if (total > 4000) return sign() > 0 ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
    if (total < -4000) return sign() > 0 ? 0.0 : -0.0;
    return std::ldexp(frac, static_cast<int>(total));
}

mpq_class Dyadic::to_rational() const {
    mpq_class q(mant_);
    mpz_class pow2(1);
    if (exp_ >= 0) {
        mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
        q *= mpq_class(pow2);
    } else {
        mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        q /= mpq_class(pow2);
    }
    q.canonicalize();
    return q;
}

std::string Dyadic::to_raw_string() const {
    std::ostringstream os;
    os << mant_.get_str() << "*2^" << exp_;
    return os.str();
}

Dyadic div_dir(const Dyadic& a, const Dyadic& b, int bits, RoundDir dir) {
    assert(!b.is_zero());
    if (a.is_zero()) return Dyadic();
    const std::int64_t la = static_cast<std::int64_t>(a.bit_length());
    const std::int64_t lb = static_cast<std::int64_t>(b.bit_length());
    const std::int64_t s = std::max<std::int64_t>(0, bits + 2 + lb - la);
    mpz_class num = a.mantissa();
    if (s > 0) mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    mpz_class q;
    if (dir == RoundDir::Down) {
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
    } else {
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
    }
    return Dyadic(q, a.exponent() - b.exponent() - s).rounded(bits, dir);
}

Dyadic sqrt_dir(const Dyadic& a, int bits, RoundDir dir) {
    assert(a.sign() >= 0);
    if (a.is_zero()) return Dyadic();
    const std::int64_t len = static_cast<std::int64_t>(a.bit_length());
    std::int64_t s = std::max<std::int64_t>(0, 2 * bits + 2 - len);
    if ((a.exponent() - s) & 1) s += 1;
    mpz_class scaled = a.mantissa();
    if (s > 0) mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    const std::int64_t eh = (a.exponent() - s) / 2;
    if (root * root == scaled) {
        return Dyadic(root, eh).rounded(bits, dir);
    }
    if (dir == RoundDir::Down) {
        return Dyadic(root, eh).rounded(bits, RoundDir::Down);
    }
    return Dyadic(root + 1, eh).rounded(bits, RoundDir::Up);
}

namespace {

// Sign of |m*2^e| - 10^k for m > 0, exact.
int cmp_pow10(const mpz_class& m, std::int64_t e, std::int64_t k) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(k >= 0 ? k : -k));
    mpz_class lhs = m;
    mpz_class rhs;
    if (k >= 0) {
        rhs = p10;
    } else {
        rhs = 1;
        lhs *= p10;  // compare m*10^|k| with 2^-e (or m*2^e*10^|k| with 1)
    }
    if (e >= 0) {
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return cmp(lhs, rhs);
}

}  // namespace

std::string to_decimal(const Dyadic& d, int digits, RoundDir dir) {
    assert(digits >= 1);
    if (d.is_zero()) return "0";

    const bool neg = d.sign() < 0;
    // Rounding toward -inf on a negative value rounds the magnitude up.
    const RoundDir mag_dir = neg ? (dir == RoundDir::Down ? RoundDir::Up : RoundDir::Down) : dir;
    mpz_class m = ::abs(d.mantissa());
    const std::int64_t e = d.exponent();

    // Decimal exponent E with 10^E <= |v| < 10^(E+1).
    const std::int64_t len = static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
    std::int64_t E = static_cast<std::int64_t>(
        std::floor(static_cast<double>(len - 1 + e) * 0.30102999566398119521));
    while (cmp_pow10(m, e, E) < 0) --E;
    while (cmp_pow10(m, e, E + 1) >= 0) ++E;

    // Directed integer T = round(|v| * 10^(digits-1-E)), T in [10^(digits-1), 10^digits].
    const std::int64_t s = digits - 1 - E;
    mpz_class num = m;
    mpz_class den(1);
    mpz_class p10;
    if (s >= 0) {
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(s));
        num *= p10;
    } else {
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(-s));
        den *= p10;
    }
    if (e >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    mpz_class t;
    if (mag_dir == RoundDir::Down) {
        mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    } else {
        mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    mpz_class cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    if (t >= cap) {  // ceiling spilled into the next decade
        E += 1;
        mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
    }

    std::string ds = t.get_str();
    assert(static_cast<int>(ds.size()) == digits);

    std::string body;
    if (E >= 0 && E <= 20) {
        const std::size_t ip = static_cast<std::size_t>(E) + 1;
        if (ip >= ds.size()) {
            body = ds + std::string(ip - ds.size(), '0');
        } else {
            body = ds.substr(0, ip) + "." + ds.substr(ip);
        }
    } else if (E < 0 && E >= -8) {
        body = "0." + std::string(static_cast<std::size_t>(-E - 1), '0') + ds;
    } else {
        body = ds.substr(0, 1);
        if (ds.size() > 1) body += "." + ds.substr(1);
        body += "e" + std::to_string(E);
    }
    return neg ? "-" + body : body;
}

}  // namespace theodorus

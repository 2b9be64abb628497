#include <doctest.h>

#include <limits>

#include "oracle.hpp"
#include "theodorus/dyadic.hpp"

using theodorus::Dyadic;
using theodorus::RoundDir;

TEST_CASE("canonical form keeps the mantissa odd and zero clean") {
    const Dyadic d(mpz_class(12), 0);
    CHECK(d.mantissa() == 3);
    CHECK(d.exponent() == 2);
    CHECK(Dyadic(mpz_class(0), 57).exponent() == 0);
    CHECK(Dyadic().is_zero());
    CHECK(Dyadic(-8).mantissa() == -1);
    CHECK(Dyadic(-8).exponent() == 3);
    CHECK(Dyadic(7) == Dyadic(mpz_class(7), 0));
}

TEST_CASE("ring operations and ordering agree with exact rationals") {
    auto g = oracle::rng(0x5eed0001);
    for (int i = 0; i < 2000; ++i) {
        const Dyadic a = oracle::random_dyadic(g, 80, 40);
        const Dyadic b = oracle::random_dyadic(g, 80, 40);
        CHECK((a + b).to_rational() == a.to_rational() + b.to_rational());
        CHECK((a - b).to_rational() == a.to_rational() - b.to_rational());
        CHECK((a * b).to_rational() == a.to_rational() * b.to_rational());
        CHECK(a.mul_pow2(3).to_rational() == a.to_rational() * 8);
        CHECK((-a).to_rational() == -(a.to_rational()));
        CHECK(a.abs().to_rational() == abs(a.to_rational()));
        CHECK((a < b) == (a.to_rational() < b.to_rational()));
        CHECK((a == b) == (a.to_rational() == b.to_rational()));
    }
}

TEST_CASE("directed rounding brackets the value within one ulp") {
    auto g = oracle::rng(0x5eed0002);
    for (int i = 0; i < 2000; ++i) {
        const Dyadic a = oracle::random_dyadic(g, 200, 80);
        const Dyadic dn = a.rounded(64, RoundDir::Down);
        const Dyadic up = a.rounded(64, RoundDir::Up);
        CHECK(dn <= a);
        CHECK(a <= up);
        CHECK(dn.bit_length() <= 64);
        CHECK(up.bit_length() <= 64);
        if (a.bit_length() > 64) {
            const Dyadic ulp = Dyadic(1).mul_pow2(
                static_cast<std::int64_t>(a.bit_length()) - 64 + a.exponent());
            CHECK(up - dn <= ulp);
        } else {
            CHECK(dn == a);
            CHECK(up == a);
        }
    }
}

TEST_CASE("division brackets the exact quotient tightly") {
    auto g = oracle::rng(0x5eed0003);
    for (int i = 0; i < 1500; ++i) {
        const Dyadic a = oracle::random_dyadic(g, 90, 50);
        Dyadic b = oracle::random_dyadic(g, 90, 50);
        if (b.is_zero()) b = Dyadic(3);
        const Dyadic qd = theodorus::div_dir(a, b, 64, RoundDir::Down);
        const Dyadic qu = theodorus::div_dir(a, b, 64, RoundDir::Up);
        const mpq_class exact = a.to_rational() / b.to_rational();
        CHECK(qd.to_rational() <= exact);
        CHECK(exact <= qu.to_rational());
        // Relative gap at most 2^-62.
        mpq_class gap = qu.to_rational() - qd.to_rational();
        gap *= mpz_class(1) << 62;
        CHECK(gap <= abs(exact));
    }
}

TEST_CASE("square root brackets and perfect squares") {
    auto g = oracle::rng(0x5eed0004);
    for (int i = 0; i < 1500; ++i) {
        const Dyadic a = oracle::random_dyadic(g, 90, 50).abs();
        const Dyadic rd = theodorus::sqrt_dir(a, 96, RoundDir::Down);
        const Dyadic ru = theodorus::sqrt_dir(a, 96, RoundDir::Up);
        CHECK(rd.sign() >= 0);
        CHECK((rd * rd).to_rational() <= a.to_rational());
        CHECK(a.to_rational() <= (ru * ru).to_rational());
        if (!a.is_zero()) {
            mpq_class gap = ru.to_rational() - rd.to_rational();
            gap *= mpz_class(1) << 94;
            CHECK(gap <= ru.to_rational());
        }
    }
    for (int i = 0; i < 300; ++i) {
        const Dyadic r = oracle::random_dyadic(g, 40, 20).abs();
        const Dyadic sq = r * r;
        CHECK(theodorus::sqrt_dir(sq, 64, RoundDir::Down) == r);
        CHECK(theodorus::sqrt_dir(sq, 64, RoundDir::Up) == r);
    }
    CHECK(theodorus::sqrt_dir(Dyadic(4), 64, RoundDir::Down) == Dyadic(2));
    CHECK(theodorus::sqrt_dir(Dyadic(), 64, RoundDir::Up).is_zero());
}

TEST_CASE("decimal rendering bounds the value from the requested side") {
    auto g = oracle::rng(0x5eed0005);
    for (int i = 0; i < 1500; ++i) {
        const Dyadic a = oracle::random_dyadic(g, 120, 100);
        const int digits = 1 + static_cast<int>(g() % 35);
        const mpq_class lo =
            oracle::parse_decimal(theodorus::to_decimal(a, digits, RoundDir::Down));
        const mpq_class hi =
            oracle::parse_decimal(theodorus::to_decimal(a, digits, RoundDir::Up));
        CHECK(lo <= a.to_rational());
        CHECK(a.to_rational() <= hi);
    }
}

TEST_CASE("decimal rendering layouts") {
    using theodorus::to_decimal;
    CHECK(to_decimal(Dyadic(), 7, RoundDir::Up) == "0");
    CHECK(to_decimal(Dyadic(1), 3, RoundDir::Down) == "1.00");
    CHECK(to_decimal(Dyadic(mpz_class(1), -3), 3, RoundDir::Down) == "0.125");
    CHECK(to_decimal(Dyadic(mpz_class(1), -3), 3, RoundDir::Up) == "0.125");
    CHECK(to_decimal(Dyadic(12345), 3, RoundDir::Down) == "12300");
    CHECK(to_decimal(Dyadic(12345), 3, RoundDir::Up) == "12400");
    CHECK(to_decimal(Dyadic(-12345), 3, RoundDir::Down) == "-12400");
    CHECK(to_decimal(Dyadic(-12345), 3, RoundDir::Up) == "-12300");
    const Dyadic third = theodorus::div_dir(Dyadic(1), Dyadic(3), 64, RoundDir::Down);
    CHECK(to_decimal(third, 4, RoundDir::Down) == "0.3333");
    CHECK(to_decimal(third, 4, RoundDir::Up) == "0.3334");
    // 2^100 = 1.2676506...e30 and 2^-100 = 7.8886090...e-31.
    CHECK(to_decimal(Dyadic(1).mul_pow2(100), 5, RoundDir::Down) == "1.2676e30");
    CHECK(to_decimal(Dyadic(1).mul_pow2(-100), 3, RoundDir::Down) == "7.88e-31");
    CHECK(to_decimal(Dyadic(1).mul_pow2(-100), 3, RoundDir::Up) == "7.89e-31");
    // Ceiling spill into the next decade.
    CHECK(to_decimal(Dyadic(9999), 2, RoundDir::Up) == "10000");
}

TEST_CASE("magnitude bound never reports a false positive") {
    auto g = oracle::rng(0x5eed0006);
    for (int i = 0; i < 2000; ++i) {
        const Dyadic a = oracle::random_dyadic(g, 60, 30);
        const std::int64_t k = static_cast<std::int64_t>(g() % 61) - 30;
        if (a.magnitude_at_most_pow2(k)) {
            mpq_class bound(mpz_class(1) << 62);
            // |a| <= 2^k checked exactly: |a| * 2^-k <= 1.
            mpq_class scaled = abs(a.to_rational());
            mpz_class p2;
            mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
            if (k >= 0) {
                scaled /= mpq_class(p2);
            } else {
                scaled *= mpq_class(p2);
            }
            CHECK(scaled <= 1);
        }
    }
}

TEST_CASE("double conversion on representable values") {
    CHECK(Dyadic(3).mul_pow2(-1).to_double() == 1.5);
    CHECK(Dyadic(-1).mul_pow2(-2).to_double() == -0.25);
    CHECK(Dyadic(0).to_double() == 0.0);
    CHECK(Dyadic(1).mul_pow2(5000).to_double() ==
          std::numeric_limits<double>::infinity());
}

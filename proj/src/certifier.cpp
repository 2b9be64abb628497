#include "theodorus/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "theodorus/errors.hpp"

namespace theodorus {

namespace {

void require_window(std::int64_t m, std::int64_t n) {
    if (m < 1 || m >= n) {
        throw InvalidWindow("window requires 1 <= m < n");
    }
}

// Product accumulations rotate their operand and rectangular boxes widen by
// about e^(sqrt(n) - sqrt(m)) doubled in bits over a window, independent of
// the working precision. Guard bits sized to the window absorb that, and
// results are outward-rounded to the requested precision on emission.
Precision window_guarded(Precision p, std::int64_t m, std::int64_t n) {
    const double span = std::sqrt(static_cast<double>(n)) -
                        std::sqrt(static_cast<double>(m));
    return Precision::unchecked(p.bits + static_cast<int>(4.0 * span) + 48);
}

ComplexInterval round_to(const ComplexInterval& z, Precision p) {
    return ComplexInterval(round_out(z.re, p), round_out(z.im, p));
}

// floor(d) for modest nonnegative d (negatives clamp to 0, safe because the
// candidate multiples are nonnegative). Returns false when d is too large to
// enumerate candidates around; the caller then takes the wide-theta path.
bool small_floor(const Dyadic& d, std::int64_t& out) {
    if (d.sign() <= 0) {
        out = 0;
        return true;
    }
    if (static_cast<std::int64_t>(d.bit_length()) + d.exponent() > 40) {
        return false;
    }
    mpz_class f;
    if (d.exponent() >= 0) {
        mpz_mul_2exp(f.get_mpz_t(), d.mantissa().get_mpz_t(),
                     static_cast<mp_bitcnt_t>(d.exponent()));
    } else {
        mpz_fdiv_q_2exp(f.get_mpz_t(), d.mantissa().get_mpz_t(),
                        static_cast<mp_bitcnt_t>(-d.exponent()));
    }
    out = f.get_si();
    return true;
}

constexpr std::int64_t kMaxPiCandidates = 64;

struct ChunkResult {
    std::int64_t certified = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> unresolved;
    bool has_min = false;
    Dyadic min_lo;
    std::pair<std::int64_t, std::int64_t> min_window{0, 0};
};

// Window at position idx in the lexicographic enumeration of
// {(m, n) : 1 <= m < n <= N}.
std::pair<std::int64_t, std::int64_t> window_at(std::int64_t idx, std::int64_t N) {
    std::int64_t m = 1;
    std::int64_t row = N - 1;
    while (idx >= row) {
        idx -= row;
        ++m;
        --row;
    }
    return {m, m + 1 + idx};
}

ChunkResult run_chunk(std::int64_t N, const std::vector<Precision>& schedule,
                      std::int64_t begin, std::int64_t end) {
    ChunkResult r;
    if (begin >= end) return r;
    auto [m, n] = window_at(begin, N);
    for (std::int64_t i = begin; i < end; ++i) {
        const WindowCertificate cert = certify_window(m, n, schedule);
        if (cert.status == WindowStatus::Certified) {
            ++r.certified;
        } else {
            r.unresolved.emplace_back(m, n);
        }
        if (!r.has_min || cert.margin.lo() < r.min_lo) {
            r.has_min = true;
            r.min_lo = cert.margin.lo();
            r.min_window = {m, n};
        }
        if (++n > N) {
            ++m;
            n = m + 1;
        }
    }
    return r;
}

}  // namespace

std::vector<Precision> default_schedule() {
    std::vector<Precision> s;
    for (int bits = 64; bits <= kMaxPrecisionBits; bits *= 2) {
        s.push_back(Precision(bits));
    }
    return s;
}

Interval window_angle(std::int64_t m, std::int64_t n, Precision p) {
    require_window(m, n);
    return iv_sub(angle_prefix(n, p), angle_prefix(m, p), p);
}

std::pair<std::int64_t, Interval> nearest_pi_multiple(const Interval& theta,
                                                      Precision p) {
    const Interval pi = iv_pi(p);
    const Interval ratio = iv_div(theta, pi, p);
    std::int64_t q_lo = 0;
    std::int64_t f_hi = 0;
    const bool bounded =
        small_floor(ratio.lo(), q_lo) && small_floor(ratio.hi(), f_hi);
    const std::int64_t q_hi = std::max(q_lo, f_hi + 1);
    if (!bounded || q_hi - q_lo >= kMaxPiCandidates) {
        // Theta is too wide to pin a candidate; the true distance to the
        // nearest multiple is somewhere in [0, pi/2]. lo = 0 can never be
        // mistaken for a certificate.
        return {q_lo, Interval(Dyadic(0), iv_scale2(pi, -1).hi())};
    }
    bool first = true;
    Dyadic min_lo;
    Dyadic min_hi;
    std::int64_t best_q = q_lo;
    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
        const Interval qpi = iv_mul(pi, Interval::point(q), p);
        const Interval dist = iv_abs(iv_sub(theta, qpi, p));
        if (first || dist.lo() < min_lo) min_lo = dist.lo();
        if (first || dist.hi() < min_hi) {
            min_hi = dist.hi();
            best_q = q;
        }
        first = false;
    }
    // Pointwise minimum over candidates: every point of theta realizes a
    // distance at least min of the lower bounds and at most min of the
    // upper bounds.
    return {best_q, Interval(min_lo, min_hi)};
}

WindowCertificate certify_window(std::int64_t m, std::int64_t n,
                                 const std::vector<Precision>& schedule) {
    require_window(m, n);
    if (schedule.empty()) {
        throw std::invalid_argument("precision schedule must be nonempty");
    }
    WindowCertificate cert;
    cert.m = m;
    cert.n = n;
    for (const Precision& p : schedule) {
        cert.theta = window_angle(m, n, p);
        auto [q, margin] = nearest_pi_multiple(cert.theta, p);
        cert.nearest_q = q;
        cert.margin = margin;
        cert.precision_bits = p.bits;
        if (margin.lo().sign() > 0) {
            cert.status = WindowStatus::Certified;
            return cert;
        }
    }
    cert.status = WindowStatus::Unresolved;
    return cert;
}

CertificationReport certify_all(std::int64_t N,
                                const std::vector<Precision>& schedule,
                                int workers) {
    if (N < 2) throw InvalidBound("certification bound must be at least 2");
    if (schedule.empty()) {
        throw std::invalid_argument("precision schedule must be nonempty");
    }
    // Extend the shared prefix table once before fanning out.
    angle_prefix(N, schedule.front());

    const std::int64_t total = N * (N - 1) / 2;
    const int w = static_cast<int>(
        std::min<std::int64_t>(std::max(workers, 1), total));

    std::vector<ChunkResult> chunks(static_cast<std::size_t>(w));
    if (w == 1) {
        chunks[0] = run_chunk(N, schedule, 0, total);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
        threads.reserve(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) {
            threads.emplace_back([&, i] {
                try {
                    chunks[static_cast<std::size_t>(i)] =
                        run_chunk(N, schedule, total * i / w, total * (i + 1) / w);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    CertificationReport report;
    report.bound = N;
    report.windows_total = total;
    for (const Precision& p : schedule) report.precision_schedule.push_back(p.bits);
    bool has_min = false;
    for (const ChunkResult& c : chunks) {
        report.certified += c.certified;
        report.unresolved.insert(report.unresolved.end(), c.unresolved.begin(),
                                 c.unresolved.end());
        if (c.has_min && (!has_min || c.min_lo < report.min_margin_lo)) {
            has_min = true;
            report.min_margin_lo = c.min_lo;
            report.min_margin_window = c.min_window;
        }
    }
    return report;
}

ComplexInterval window_product(std::int64_t m, std::int64_t n, Precision p) {
    require_window(m, n);
    const Precision w = window_guarded(p, m, n);
    ComplexInterval z = ComplexInterval::point(1, 0);
    for (std::int64_t k = m; k < n; ++k) {
        z = c_mul(z, spiral_factor(k, w), w);
    }
    return round_to(z, p);
}

std::vector<AuditFinding> audit_im_sign(std::int64_t N, Precision p) {
    if (N < 2) throw InvalidBound("audit bound must be at least 2");
    // One working precision covers every chain; the widest window is (1, N).
    const Precision w = window_guarded(p, 1, N);
    std::vector<ComplexInterval> factors;
    factors.reserve(static_cast<std::size_t>(N - 1));
    for (std::int64_t k = 1; k < N; ++k) {
        factors.push_back(spiral_factor(k, w));
    }
    std::vector<AuditFinding> findings;
    for (std::int64_t m = 1; m < N; ++m) {
        ComplexInterval z = ComplexInterval::point(1, 0);
        for (std::int64_t k = m; k < N; ++k) {
            z = c_mul(z, factors[static_cast<std::size_t>(k - 1)], w);
            const Interval im = round_out(z.im, p);
            if (im.lo().sign() > 0) continue;
            AuditFinding f;
            f.m = m;
            f.n = k + 1;
            f.im_enclosure = im;
            f.verdict = im.hi().sign() < 0 ? ImSign::Negative
                                           : ImSign::StraddlesZeroAtCap;
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

}  // namespace theodorus

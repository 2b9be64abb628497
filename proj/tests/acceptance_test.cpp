// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances and time limits are pinned here as named constants.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "theodorus/certifier.hpp"
#include "theodorus/cli_app.hpp"
#include "theodorus/errors.hpp"
#include "theodorus/spiral.hpp"

using namespace theodorus;

namespace {

// ---- pinned tolerances and limits -----------------------------------------
constexpr double kAnchorWidthLog2 = -60;      // widths of z2 data at 128 bits
constexpr double kCrossWidthLog2 = -64;       // widths along both formulas
constexpr std::int64_t kCrossBound = 2048;
constexpr double kCrossSeconds = 10.0;
constexpr double kTelescopeSeconds = 5.0;
constexpr std::int64_t kSweepBound = 1000;
constexpr double kSweepSeconds = 120.0;
constexpr double kMinMarginReference = 1.912502320067233e-06;
constexpr double kMinMarginTolerance = 1e-9;
constexpr double kAuditImReference = -0.1444;
constexpr double kAuditImTolerance = 1e-3;
constexpr int kDifferentialTrials = 100000;
constexpr double kPlotLegTolerance = 1e-9;

std::chrono::steady_clock::time_point tick() {
    return std::chrono::steady_clock::now();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(tick() - t0).count();
}

bool width_below_pow2(const Interval& iv, int log2_bound) {
    return iv.width() < Dyadic(mpz_class(1), log2_bound);
}

// ---- criterion 1: construction anchors ------------------------------------
bool construction_anchors() {
    const Precision p(128);
    const SpiralPoint z1 = point_by_product(1, p);
    if (!(z1.z.re == Interval::point(1))) return false;
    if (!(z1.z.im == Interval::point(0))) return false;

    const SpiralPoint z2 = point_by_product(2, p);
    if (!z2.z.re.contains(Dyadic(1)) || !z2.z.im.contains(Dyadic(1))) return false;
    if (!width_below_pow2(z2.z.re, kAnchorWidthLog2)) return false;
    if (!width_below_pow2(z2.z.im, kAnchorWidthLog2)) return false;

    const Interval mod = iv_sqrt(modulus_sq(z2.z, p), p);
    if (!width_below_pow2(mod, kAnchorWidthLog2)) return false;
    // sqrt(2) lies inside iff lo^2 <= 2 <= hi^2 (endpoints nonnegative).
    if (mod.lo().sign() < 0) return false;
    const mpq_class lo2 = mod.lo().to_rational() * mod.lo().to_rational();
    const mpq_class hi2 = mod.hi().to_rational() * mod.hi().to_rational();
    return lo2 <= 2 && 2 <= hi2;
}

// ---- criterion 2: the two formulas agree ----------------------------------
bool cross_formula_agreement() {
    const auto t0 = tick();
    const Precision p(128);
    const auto rec = recurrence_orbit(kCrossBound, p);
    const auto prod = spiral_points(kCrossBound, p);
    if (rec.size() != static_cast<std::size_t>(kCrossBound)) return false;
    if (prod.size() != static_cast<std::size_t>(kCrossBound)) return false;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (!rec[i].re.intersects(prod[i].z.re) ||
            !rec[i].im.intersects(prod[i].z.im)) {
            return false;
        }
        for (const Interval* iv :
             {&rec[i].re, &rec[i].im, &prod[i].z.re, &prod[i].z.im}) {
            if (!width_below_pow2(*iv, kCrossWidthLog2)) return false;
        }
    }
    return seconds_since(t0) < kCrossSeconds;
}

// ---- criterion 3: squared modulus telescopes ------------------------------
bool telescoping_modulus() {
    const auto t0 = tick();
    const Precision p(128);
    for (const SpiralPoint& sp : spiral_points(kCrossBound, p)) {
        if (!modulus_sq(sp.z, p).contains(Dyadic(sp.index))) return false;
    }
    return seconds_since(t0) < kTelescopeSeconds;
}

// ---- criterion 4: exhaustive certification to 1000 ------------------------
bool exhaustive_sweep() {
    const auto t0 = tick();
    const CertificationReport r = certify_all(kSweepBound, default_schedule(), 4);
    if (r.windows_total != 499500) return false;
    if (r.certified != r.windows_total) return false;
    if (!r.unresolved.empty()) return false;
    if (r.min_margin_window != std::pair<std::int64_t, std::int64_t>(296, 414)) {
        return false;
    }
    if (std::abs(r.min_margin_lo.to_double() - kMinMarginReference) >
        kMinMarginTolerance) {
        return false;
    }
    const WindowCertificate c = certify_window(296, 414, default_schedule());
    if (c.status != WindowStatus::Certified || c.precision_bits != 64) {
        return false;
    }
    return seconds_since(t0) < kSweepSeconds;
}

// ---- criterion 5: the imaginary-part audit --------------------------------
bool audit_first_window() {
    const Precision p(64);
    if (!audit_im_sign(6, p).empty()) return false;
    const auto findings = audit_im_sign(7, p);
    if (findings.size() != 1) return false;
    const AuditFinding& f = findings.front();
    if (f.m != 1 || f.n != 7) return false;
    if (f.verdict != ImSign::Negative) return false;
    const double mid = f.im_enclosure.midpoint().to_double();
    return std::abs(mid - kAuditImReference) < kAuditImTolerance;
}

// ---- criterion 6: revolution indices --------------------------------------
bool revolution_indices() {
    const Precision p(64);
    return revolution_index(1, p) == 18 && revolution_index(2, p) == 55;
}

// ---- criterion 7: randomized differential checks --------------------------
Dyadic random_dyadic(std::mt19937_64& g, int exp_range, bool allow_negative) {
    std::uniform_int_distribution<std::uint64_t> mant;
    std::uniform_int_distribution<int> expo(-exp_range, exp_range);
    mpz_class m(static_cast<unsigned long>(mant(g) >> 11));  // 53-bit mantissa
    if (allow_negative && (g() & 1)) m = -m;
    return Dyadic(m, expo(g));
}

Interval random_interval(std::mt19937_64& g, int exp_range, bool allow_negative) {
    Dyadic a = random_dyadic(g, exp_range, allow_negative);
    Dyadic b = random_dyadic(g, exp_range, allow_negative);
    if (b < a) std::swap(a, b);
    return Interval(a, b);
}

bool differential_kernels() {
    const Precision coarse(64);
    const Precision fine(256);
    std::mt19937_64 g(0xacce9701u);

    for (int i = 0; i < kDifferentialTrials; ++i) {
        const Interval a = random_interval(g, 40, true);
        const Interval b = random_interval(g, 40, true);
        if (!iv_add(a, b, coarse).contains(iv_add(a, b, fine).midpoint())) {
            return false;
        }
        if (!iv_mul(a, b, coarse).contains(iv_mul(a, b, fine).midpoint())) {
            return false;
        }
    }
    for (int i = 0; i < kDifferentialTrials; ++i) {
        const Interval a = random_interval(g, 40, true);
        Interval d = random_interval(g, 40, true);
        while (d.contains_zero()) d = random_interval(g, 40, true);
        if (!iv_div(a, d, coarse).contains(iv_div(a, d, fine).midpoint())) {
            return false;
        }
    }
    for (int i = 0; i < kDifferentialTrials; ++i) {
        Dyadic lo = random_dyadic(g, 40, false).abs();
        Dyadic hi = random_dyadic(g, 40, false).abs();
        if (hi < lo) std::swap(lo, hi);
        const Interval a(lo, hi);
        if (!iv_sqrt(a, coarse).contains(iv_sqrt(a, fine).midpoint())) {
            return false;
        }
    }
    for (int i = 0; i < kDifferentialTrials; ++i) {
        const Interval a = random_interval(g, 8, true);
        if (!iv_atan(a, coarse).contains(iv_atan(a, fine).midpoint())) {
            return false;
        }
    }
    return true;
}

// ---- criterion 8: pi enclosure width --------------------------------------
bool pi_width() {
    for (int bits : {64, 128, 256}) {
        const Interval pi = iv_pi(Precision(bits));
        if (!(pi.width() <= Dyadic(mpz_class(1), 4 - bits))) return false;
    }
    return true;
}

// ---- criterion 9: the plotted triangles -----------------------------------
bool plotted_triangles() {
    namespace fs = std::filesystem;
    const fs::path out =
        fs::temp_directory_path() /
        ("theodorus_accept_plot_" + std::to_string(::getpid()) + ".svg");
    const std::string cmd = std::string(THEODORUS_BINARY) +
                            " plot --max-n 8 > " + out.string() + " 2> /dev/null";
    const int raw = std::system(cmd.c_str());
    if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) return false;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string svg = ss.str();
    fs::remove(out);

    std::vector<std::array<double, 4>> tris;
    std::size_t pos = 0;
    while ((pos = svg.find("<path d=\"", pos)) != std::string::npos) {
        pos += 9;
        const std::size_t end = svg.find('"', pos);
        const std::string d = svg.substr(pos, end - pos);
        std::array<double, 4> t{};
        if (std::sscanf(d.c_str(), "M 0 0 L %lf %lf L %lf %lf Z", &t[0], &t[1],
                        &t[2], &t[3]) != 4) {
            return false;  // every path must be an origin-anchored triangle
        }
        tris.push_back(t);
        pos = end;
    }
    if (tris.size() != 8) return false;
    for (const auto& t : tris) {
        const double leg = std::hypot(t[2] - t[0], t[3] - t[1]);
        if (std::abs(leg - 1.0) > kPlotLegTolerance) return false;
    }
    return true;
}

// ---- criterion 10: worker-count determinism over the CLI report -----------
bool report_determinism() {
    RunConfig cfg;
    cfg.command = "certify";
    cfg.max_n = 300;
    cfg.format = "json";

    cfg.workers = 1;
    std::ostringstream one;
    if (cmd_certify(cfg, one) != 0) return false;

    cfg.workers = 8;
    std::ostringstream eight;
    if (cmd_certify(cfg, eight) != 0) return false;

    return one.str() == eight.str() && !one.str().empty();
}

struct Criterion {
    const char* label;
    std::function<bool()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"construction anchors: z1 exact, z2 encloses 1+i and |z2| encloses "
         "sqrt(2), widths below 2^-60 at 128 bits",
         construction_anchors},
        {"recurrence and product enclosures intersect through n=2048 with "
         "widths below 2^-64, under 10 s",
         cross_formula_agreement},
        {"squared modulus telescopes to n through n=2048, under 5 s",
         telescoping_modulus},
        {"all 499500 windows to N=1000 certified; minimum margin at (296,414) "
         "matches the reference within 1e-9, under 120 s",
         exhaustive_sweep},
        {"audit: no findings below 7; first window (1,7) negative with "
         "midpoint near -0.1444",
         audit_first_window},
        {"revolution indices: first at n=18, second at n=55",
         revolution_indices},
        {"100000 randomized differential checks per kernel "
         "(add, mul, div, sqrt, atan): fine midpoints inside coarse results",
         differential_kernels},
        {"pi enclosure width at most 2^(4-p) for p in {64,128,256}", pi_width},
        {"plot of 8 ribs: eight origin-anchored triangles, unit legs within "
         "1e-9",
         plotted_triangles},
        {"certification report bytes identical for 1 and 8 workers at N=300",
         report_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = tick();
        bool ok = false;
        std::string note;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            ok = false;
            note = std::string(" [exception: ") + e.what() + "]";
        }
        std::printf("%s  %2zu  %s (%.2f s)%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label, seconds_since(t0), note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0) {
        std::printf("all %zu criteria hold\n", criteria.size());
    } else {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    }
    return failures == 0 ? 0 : 1;
}

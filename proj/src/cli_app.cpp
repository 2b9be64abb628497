#include "theodorus/cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "theodorus/certifier.hpp"
#include "theodorus/errors.hpp"
#include "theodorus/spiral.hpp"

namespace theodorus {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

bool parse_int_strict(const char* s, int& out) {
    const char* end = s + std::strlen(s);
    auto [p, ec] = std::from_chars(s, end, out);
    return ec == std::errc() && p == end;
}

std::vector<Precision> build_schedule(int start_bits, int cap_bits) {
    std::vector<Precision> s;
    for (int b = start_bits; b <= cap_bits; b *= 2) s.push_back(Precision(b));
    if (s.empty()) s.push_back(Precision(start_bits));
    return s;
}

struct PointRow {
    std::int64_t n;
    std::string re_lo, re_hi, im_lo, im_hi, theta_lo, theta_hi;
};

std::vector<PointRow> point_rows(std::int64_t max_n, Precision p, int digits) {
    std::vector<PointRow> rows;
    rows.reserve(static_cast<std::size_t>(max_n));
    for (const SpiralPoint& sp : spiral_points(max_n, p)) {
        auto [re_lo, re_hi] = to_decimal(sp.z.re, digits);
        auto [im_lo, im_hi] = to_decimal(sp.z.im, digits);
        auto [th_lo, th_hi] = to_decimal(sp.angle, digits);
        rows.push_back({sp.index, re_lo, re_hi, im_lo, im_hi, th_lo, th_hi});
    }
    return rows;
}

const char* verdict_label(ImSign v) {
    switch (v) {
        case ImSign::Positive: return "positive";
        case ImSign::Negative: return "negative";
        case ImSign::StraddlesZeroAtCap: return "straddles-zero-at-cap";
    }
    return "unknown";
}

}  // namespace

int cmd_generate(const RunConfig& cfg, std::ostream& os) {
    const auto rows = point_rows(cfg.max_n, Precision(cfg.precision_bits), cfg.digits);
    if (cfg.format == "csv") {
        os << "n,re_lo,re_hi,im_lo,im_hi,theta_lo,theta_hi\n";
        for (const auto& r : rows) {
            os << r.n << ',' << r.re_lo << ',' << r.re_hi << ',' << r.im_lo << ','
               << r.im_hi << ',' << r.theta_lo << ',' << r.theta_hi << '\n';
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["n"] = r.n;
            row["re_lo"] = r.re_lo;
            row["re_hi"] = r.re_hi;
            row["im_lo"] = r.im_lo;
            row["im_hi"] = r.im_hi;
            row["theta_lo"] = r.theta_lo;
            row["theta_hi"] = r.theta_hi;
            arr.push_back(std::move(row));
        }
        os << arr.dump(2) << '\n';
    }
    return 0;
}

int cmd_certify(const RunConfig& cfg, std::ostream& os) {
    const auto schedule = build_schedule(cfg.precision_bits, cfg.precision_cap);
    const CertificationReport report =
        certify_all(cfg.max_n, schedule, cfg.workers);
    ordered_json j;
    j["N"] = report.bound;
    j["windows_total"] = report.windows_total;
    j["certified"] = report.certified;
    ordered_json unresolved = ordered_json::array();
    for (const auto& [m, n] : report.unresolved) {
        unresolved.push_back(ordered_json::array({m, n}));
    }
    j["unresolved"] = std::move(unresolved);
    j["min_margin_window"] = ordered_json::array(
        {report.min_margin_window.first, report.min_margin_window.second});
    j["min_margin_lo"] = to_decimal(report.min_margin_lo, cfg.digits, RoundDir::Down);
    j["precision_schedule"] = report.precision_schedule;
    j["tool_version"] = kToolVersion;
    os << j.dump(2) << '\n';
    return report.unresolved.empty() ? 0 : 2;
}

int cmd_plot(const RunConfig& cfg, std::ostream& os) {
    const Precision p(cfg.precision_bits);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(cfg.max_n + 1));
    for (const SpiralPoint& sp : spiral_points(cfg.max_n + 1, p)) {
        pts.emplace_back(sp.z.re.midpoint().to_double(),
                         sp.z.im.midpoint().to_double());
    }
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto& [x, y] : pts) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    const double pad = 0.5;
    const double model_w = (max_x - min_x) + 2 * pad;
    const double model_h = (max_y - min_y) + 2 * pad;
    const double scale = 600.0 / std::max(model_w, model_h);
    const double width_px = model_w * scale;
    const double height_px = model_h * scale;
    // Paths carry raw model coordinates; the group transform applies the
    // uniform scale and flips the y axis into screen orientation.
    const double tx = (pad - min_x) * scale;
    const double ty = (max_y + pad) * scale;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << fmt_double(width_px) << "\" height=\"" << fmt_double(height_px)
       << "\" viewBox=\"0 0 " << fmt_double(width_px) << ' '
       << fmt_double(height_px) << "\" data-model-scale=\"" << fmt_double(scale)
       << "\" data-origin-x=\"" << fmt_double(tx) << "\" data-origin-y=\""
       << fmt_double(ty) << "\">\n";
    os << "  <title>Square-root spiral, first " << cfg.max_n << " ribs</title>\n";
    os << "  <g transform=\"translate(" << fmt_double(tx) << ' ' << fmt_double(ty)
       << ") scale(" << fmt_double(scale) << ' ' << fmt_double(-scale)
       << ")\" fill=\"#dce6f2\" fill-opacity=\"0.55\" stroke=\"#32506e\""
       << " stroke-width=\"" << fmt_double(1.2 / scale)
       << "\" stroke-linejoin=\"round\">\n";
    for (std::int64_t n = 1; n <= cfg.max_n; ++n) {
        const auto& a = pts[static_cast<std::size_t>(n - 1)];
        const auto& b = pts[static_cast<std::size_t>(n)];
        os << "    <path d=\"M 0 0 L " << fmt_double(a.first) << ' '
           << fmt_double(a.second) << " L " << fmt_double(b.first) << ' '
           << fmt_double(b.second) << " Z\"/>\n";
    }
    os << "  </g>\n</svg>\n";
    return 0;
}

int cmd_stats(const RunConfig& cfg, std::ostream& os) {
    const Precision p(cfg.precision_bits);
    for (std::int64_t r = 1;; ++r) {
        const std::int64_t idx = revolution_index(r, p, cfg.precision_cap);
        if (idx > cfg.max_n) break;
        os << "revolution " << r << " completes at n=" << idx << '\n';
    }
    const SpiralPoint sp = point_by_product(cfg.max_n, p);
    const Interval modulus = iv_sqrt(modulus_sq(sp.z, p), p);
    auto [th_lo, th_hi] = to_decimal(sp.angle, cfg.digits);
    auto [mod_lo, mod_hi] = to_decimal(modulus, cfg.digits);
    os << "theta(" << cfg.max_n << ") in [" << th_lo << ", " << th_hi << "]\n";
    os << "modulus(" << cfg.max_n << ") in [" << mod_lo << ", " << mod_hi << "]\n";
    return 0;
}

int cmd_audit(const RunConfig& cfg, std::ostream& os) {
    const auto findings = audit_im_sign(cfg.max_n, Precision(cfg.precision_bits));
    if (findings.empty()) {
        os << "no counterexample windows\n";
        return 0;
    }
    for (const AuditFinding& f : findings) {
        auto [lo, hi] = to_decimal(f.im_enclosure, cfg.digits);
        os << "window (" << f.m << ", " << f.n << ") im in [" << lo << ", " << hi
           << "] " << verdict_label(f.verdict) << '\n';
    }
    return 0;
}

namespace {

// Empty string when valid, else the complaint for stderr.
std::string validate(const RunConfig& cfg) {
    if (cfg.max_n < 1) return "max-n must be at least 1";
    if ((cfg.command == "certify" || cfg.command == "audit") && cfg.max_n < 2) {
        return "need at least two points";
    }
    if (cfg.precision_bits < kMinPrecisionBits) {
        return "precision must be at least 16 bits";
    }
    if (cfg.precision_cap > kMaxPrecisionBits) {
        return "precision cap must be at most 8192 bits";
    }
    if (cfg.precision_bits > cfg.precision_cap) {
        return "precision must not exceed the precision cap";
    }
    if (cfg.digits < 1) return "digits must be at least 1";
    if (cfg.workers < 1) return "workers must be at least 1";
    if (cfg.command == "generate" && cfg.format != "csv" && cfg.format != "json") {
        return "generate supports csv or json output";
    }
    if (cfg.command == "certify" && cfg.format != "json") {
        return "certify reports are json";
    }
    if (cfg.command == "plot" && cfg.format != "svg") {
        return "plot emits svg";
    }
    return {};
}

int dispatch(const RunConfig& cfg, std::ostream& os) {
    if (cfg.command == "generate") return cmd_generate(cfg, os);
    if (cfg.command == "certify") return cmd_certify(cfg, os);
    if (cfg.command == "plot") return cmd_plot(cfg, os);
    if (cfg.command == "stats") return cmd_stats(cfg, os);
    if (cfg.command == "audit") return cmd_audit(cfg, os);
    return 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Validated arithmetic toolkit for the square-root spiral"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* sub, bool with_format, bool with_workers) {
        sub->add_option("--max-n", cfg.max_n, "Largest point index");
        sub->add_option("--precision", cfg.precision_bits,
                        "Initial working precision in bits");
        sub->add_option("--precision-cap", cfg.precision_cap,
                        "Largest precision the escalation may reach");
        sub->add_option("--out", cfg.output_path,
                        "Output file (standard output when omitted)");
        sub->add_option("--digits", cfg.digits,
                        "Significant decimal digits for interval endpoints");
        if (with_format) {
            sub->add_option("--format", cfg.format, "Output format");
        }
        if (with_workers) {
            sub->add_option("--workers", cfg.workers,
                            "Concurrent certification workers");
        }
    };
    add_common(app.add_subcommand("generate", "Write the point table"), true, false);
    add_common(app.add_subcommand("certify",
                                  "Certify that no two hypotenuses are collinear"),
               true, true);
    add_common(app.add_subcommand("plot", "Draw the spiral triangles as SVG"),
               true, false);
    add_common(app.add_subcommand("stats", "Revolution indices and extremes"),
               false, false);
    add_common(app.add_subcommand("audit",
                                  "List windows whose product has non-positive "
                                  "imaginary part"),
               false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    if (const char* env = std::getenv("THEODORUS_PRECISION_CAP")) {
        int cap = 0;
        if (!parse_int_strict(env, cap)) {
            std::cerr << "THEODORUS_PRECISION_CAP is not an integer\n";
            return 1;
        }
        cfg.precision_cap = cap;
    }
    if (cfg.format.empty()) {
        if (cfg.command == "generate") cfg.format = "csv";
        if (cfg.command == "certify") cfg.format = "json";
        if (cfg.command == "plot") cfg.format = "svg";
    }

    if (const std::string err = validate(cfg); !err.empty()) {
        std::cerr << err << '\n';
        return 1;
    }

    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) {
            std::cerr << "cannot open output file: " << cfg.output_path << '\n';
            return 1;
        }
    }
    std::ostream& os = cfg.output_path.empty() ? std::cout : file;

    try {
        const int status = dispatch(cfg, os);
        os.flush();
        if (!os.good()) {
            std::cerr << "write failed: " << cfg.output_path << '\n';
            return 1;
        }
        return status;
    } catch (const PrecisionExhausted& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}

}  // namespace theodorus

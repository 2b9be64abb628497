#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "theodorus/interval.hpp"

namespace theodorus {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
    std::string command;
    std::int64_t max_n = 8;
    int precision_bits = 64;
    int precision_cap = kMaxPrecisionBits;
    std::string output_path;  // empty writes to standard output
    std::string format;       // csv | json | svg; default depends on command
    int digits = 30;
    int workers = 1;
};

// Parses argv, applies the THEODORUS_PRECISION_CAP override, validates the
// config, dispatches the subcommand. Returns the process exit status:
// 0 success, 1 invalid config or operational error, 2 certification left
// windows unresolved or a precision-capped decision was undecidable.
int run_cli(int argc, char** argv);

// Individual command runners writing to an already-open stream. Exposed for
// exercising the exact output formats without spawning a process.
int cmd_generate(const RunConfig& cfg, std::ostream& os);
int cmd_certify(const RunConfig& cfg, std::ostream& os);
int cmd_plot(const RunConfig& cfg, std::ostream& os);
int cmd_stats(const RunConfig& cfg, std::ostream& os);
int cmd_audit(const RunConfig& cfg, std::ostream& os);

}  // namespace theodorus

// Command-line front end: `eval` and `verify` subcommands.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monotone/verify.hpp"
#include "report_format.hpp"

namespace monotone::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

inline constexpr const char* kPrecisionEnv = "MONOTONE_KERNEL_PRECISION";

struct RunConfig {
    std::vector<verify::Suite> suites;
    std::optional<verify::GridSpec> grid;
    std::optional<Real> tol;
    std::optional<unsigned> k_max;
    Format format = Format::json;
    std::string out_path;  // empty means stdout
};

/// Parses "lo:hi:count:log|lin".
verify::GridSpec parse_grid(const std::string& text);

/// Evaluates one library function and prints it with 17 significant digits.
int cmd_eval(const std::string& function, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

/// Runs the configured suites and writes the report. Returns 0 iff all pass.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full argument parsing and dispatch; `argv[0]` is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monotone::cli

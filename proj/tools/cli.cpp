#include "cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "monotone/polygamma.hpp"
#include "monotone/series.hpp"

namespace monotone::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format17(Real x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17Lg", x);
    return buf;
}

Real parse_real(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const Real v = std::strtold(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw UsageError("not a number: '" + s + "'");
    }
    return v;
}

unsigned as_order(Real x, const char* name) {
    detail::require(std::isfinite(x) && x >= 0 && x == std::floor(x) && x <= 1e6,
                    std::string(name) + " must be a nonnegative integer");
    return static_cast<unsigned>(x);
}

struct EvalResult {
    std::vector<Real> values;
    std::optional<Real> error_bound;
};

struct EvalFunction {
    std::size_t arity;
    std::function<EvalResult(const std::vector<Real>&)> fn;
};

EvalResult from_series(const SeriesValue& s) { return {{s.value}, s.error_bound}; }

const std::map<std::string, EvalFunction>& eval_table() {
    static const std::map<std::string, EvalFunction> table{
        {"bessel_i",
         {2, [](const auto& a) { return from_series(bessel_i(as_order(a[0], "n"), a[1], kEpsilon)); }}},
        {"bessel_kernel", {1, [](const auto& a) { return from_series(bessel_kernel(a[0], kEpsilon)); }}},
        {"hyper_1f2",
         {2, [](const auto& a) { return from_series(hyper_1f2(as_order(a[0], "k"), a[1], kEpsilon)); }}},
        {"exp_tail_h",
         {2, [](const auto& a) { return EvalResult{{exp_tail_h(as_order(a[0], "k"), a[1])}, {}}; }}},
        {"trigamma", {1, [](const auto& a) { return EvalResult{{trigamma(a[0])}, {}}; }}},
        {"polygamma",
         {2,
          [](const auto& a) {
              return EvalResult{{polygamma(PolygammaOrder(as_order(a[0], "m")), a[1])}, {}};
          }}},
        {"h", {1, [](const auto& a) { return EvalResult{{verify::h_value(a[0])}, {}}; }}},
        {"kernel_w", {1, [](const auto& a) { return EvalResult{{verify::kernel_w(a[0])}, {}}; }}},
        {"q",
         {1,
          [](const auto& a) {
              const QFamily q = q_family(a[0]);
              return EvalResult{{q.q, q.q1, q.q2, q.q3}, {}};
          }}},
    };
    return table;
}

// Working precision is fixed at the Real mantissa; larger requests are noted.
int check_precision_env(std::ostream& err) {
    const char* raw = std::getenv(kPrecisionEnv);
    if (raw == nullptr || *raw == '\0') return kExitOk;
    char* end = nullptr;
    const long bits = std::strtol(raw, &end, 10);
    if (*end != '\0' || bits <= 0) {
        err << "error: " << kPrecisionEnv << " must be a positive integer bit count\n";
        return kExitUsage;
    }
    constexpr long kBits = std::numeric_limits<Real>::digits;
    if (bits > kBits) {
        err << "note: " << kPrecisionEnv << "=" << bits << " exceeds supported precision; using "
            << kBits << " bits\n";
    }
    return kExitOk;
}

}  // namespace

verify::GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 4) throw UsageError("--grid expects lo:hi:count:log|lin");
    verify::GridSpec g;
    g.lo = parse_real(parts[0]);
    g.hi = parse_real(parts[1]);
    const Real count = parse_real(parts[2]);
    if (!(count >= 2 && count == std::floor(count) && count <= 1e7)) {
        throw UsageError("grid count must be an integer >= 2");
    }
    g.count = static_cast<std::size_t>(count);
    if (parts[3] == "log") {
        g.spacing = verify::Spacing::log;
    } else if (parts[3] == "lin") {
        g.spacing = verify::Spacing::linear;
    } else {
        throw UsageError("grid spacing must be log or lin");
    }
    if (!(g.lo > 0 && g.lo < g.hi && std::isfinite(g.hi))) {
        throw UsageError("grid requires 0 < lo < hi");
    }
    return g;
}

int cmd_eval(const std::string& function, const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    const auto& table = eval_table();
    const auto it = table.find(function);
    if (it == table.end()) {
        err << "error: unknown function '" << function << "'\n";
        return kExitUsage;
    }
    if (args.size() != it->second.arity) {
        err << "error: " << function << " takes " << it->second.arity << " argument(s), got "
            << args.size() << '\n';
        return kExitUsage;
    }
    std::vector<Real> values;
    try {
        for (const auto& a : args) values.push_back(parse_real(a));
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        const EvalResult r = it->second.fn(values);
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            out << (i ? " " : "") << format17(r.values[i]);
        }
        out << '\n';
        if (r.error_bound) out << "error_bound " << format17(*r.error_bound) << '\n';
    } catch (const std::exception& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.tol && !(*config.tol > 0)) {
        err << "error: --tol must be positive\n";
        return kExitUsage;
    }
    if (config.k_max && *config.k_max > kMaxDerivativeOrder) {
        err << "error: --kmax must lie in [0, " << kMaxDerivativeOrder << "]\n";
        return kExitUsage;
    }
    std::vector<verify::Suite> suites = config.suites;
    if (suites.empty()) suites.assign(std::begin(verify::kAllSuites), std::end(verify::kAllSuites));

    std::vector<verify::CheckReport> reports;
    try {
        for (verify::Suite s : suites) {
            const verify::Grid grid = verify::make_grid(config.grid.value_or(verify::default_grid(s)));
            const unsigned k_max = config.k_max.value_or(verify::default_k_max(s));
            const Real tol = config.tol.value_or(verify::default_tol(s));
            reports.push_back(verify::run_suite(s, grid, k_max, tol));
        }
    } catch (const DomainError& e) {
        err << "error: invalid configuration: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::string timestamp = utc_timestamp();
    std::ofstream file;
    if (!config.out_path.empty()) {
        file.open(config.out_path);
        if (!file) {
            err << "error: cannot open " << config.out_path << '\n';
            return kExitUsage;
        }
    }
    std::ostream& sink = config.out_path.empty() ? out : file;
    switch (config.format) {
        case Format::json: write_json(sink, reports, timestamp); break;
        case Format::csv: write_csv(sink, reports); break;
        case Format::text: write_text(sink, reports); break;
    }
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    return all_pass ? kExitOk : kExitSuiteFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    if (const int code = check_precision_env(err); code != kExitOk) return code;

    CLI::App app{"Special functions and verification harness for h(t) = exp(1/t) - psi'(t)",
                 "monotone-kernel"};
    app.require_subcommand(1);

    std::string function;
    std::vector<std::string> eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate a library function");
    eval->add_option("function", function,
                     "bessel_i | bessel_kernel | hyper_1f2 | exp_tail_h | trigamma | polygamma | "
                     "h | kernel_w | q")
        ->required();
    eval->add_option("args", eval_args, "Function arguments");
    eval->allow_extras(false);

    std::vector<std::string> suite_names;
    std::string grid_text;
    double tol = 0;
    int k_max = -1;
    std::string format = "json";
    std::string out_path;
    auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
    verify_cmd->add_option("--suite", suite_names, "Suite to run (repeatable; default all)");
    verify_cmd->add_option("--grid", grid_text, "Grid override lo:hi:count:log|lin");
    auto* tol_opt = verify_cmd->add_option("--tol", tol, "Tolerance for cm_laplace / representations");
    auto* kmax_opt = verify_cmd->add_option("--kmax", k_max, "Largest derivative / tail order");
    verify_cmd->add_option("--format", format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    verify_cmd->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*eval) return cmd_eval(function, eval_args, out, err);

    RunConfig config;
    try {
        for (const auto& name : suite_names) {
            const auto s = verify::parse_suite(name);
            if (!s) throw UsageError("unknown suite '" + name + "'");
            config.suites.push_back(*s);
        }
        if (!grid_text.empty()) config.grid = parse_grid(grid_text);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (*tol_opt) config.tol = tol;
    if (*kmax_opt) {
        if (k_max < 0) {
            err << "error: --kmax must be nonnegative\n";
            return kExitUsage;
        }
        config.k_max = static_cast<unsigned>(k_max);
    }
    config.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
    config.out_path = out_path;
    return cmd_verify(config, out, err);
}

}  // namespace monotone::cli

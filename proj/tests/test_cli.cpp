#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using monotone::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "monotone-kernel");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

nlohmann::json strip_volatile(nlohmann::json reports) {
    for (auto& r : reports) {
        r.erase("timestamp");
        r.erase("elapsed_seconds");
    }
    return reports;
}

}  // namespace

TEST_CASE("eval prints 17 significant digits") {
    auto r = invoke({"eval", "trigamma", "1"});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "1.6449340668482264");

    r = invoke({"eval", "bessel_kernel", "0"});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "1");
    CHECK(r.out.find("error_bound") != std::string::npos);

    r = invoke({"eval", "h", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("1.0733477616108", 0) == 0);

    r = invoke({"eval", "q", "0"});
    CHECK(first_line(r.out) == "0 0 0 0");

    r = invoke({"eval", "bessel_i", "1", "2"});
    CHECK(r.out.rfind("1.590636854637329", 0) == 0);

    r = invoke({"eval", "polygamma", "2", "1"});
    CHECK(r.out.rfind("-2.40411380631918", 0) == 0);

    for (const char* fn : {"hyper_1f2", "exp_tail_h"}) {
        r = invoke({"eval", fn, "0", "1"});
        CHECK(r.code == 0);
    }
    CHECK(invoke({"eval", "kernel_w", "1"}).out.rfind("0.0086601477680026", 0) == 0);
}

TEST_CASE("eval exit codes") {
    CHECK(invoke({"eval", "digamma", "1"}).code == 2);
    CHECK(invoke({"eval", "trigamma"}).code == 2);
    CHECK(invoke({"eval", "trigamma", "1", "2"}).code == 2);
    CHECK(invoke({"eval", "trigamma", "abc"}).code == 2);

    auto r = invoke({"eval", "trigamma", "0"});
    CHECK(r.code == 3);
    CHECK(r.err.find("t > 0") != std::string::npos);
    CHECK(invoke({"eval", "polygamma", "0", "1"}).code == 3);
    CHECK(invoke({"eval", "bessel_i", "1.5", "1"}).code == 3);
    CHECK(invoke({"eval", "kernel_w", "0"}).code == 3);
    CHECK(invoke({"eval", "exp_tail_h", "0", "-1"}).code == 3);
}

TEST_CASE("verify writes the report schema") {
    auto r = invoke({"verify", "--suite", "ineq1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    const auto& rep = j[0];
    std::vector<std::string> keys;
    for (const auto& [k, v] : rep.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"suite", "tol", "grid", "k_max", "entries", "min_margin",
                                           "pass", "elapsed_seconds", "timestamp"});
    CHECK(rep["suite"] == "ineq1");
    CHECK(rep["pass"] == true);
    CHECK(rep["min_margin"].get<double>() > 0);
    CHECK(rep["k_max"].is_null());
    CHECK(rep["grid"]["count"] == 200);
    CHECK(rep["grid"]["spacing"] == "log");
    CHECK(rep["entries"].size() == 200);
    std::vector<std::string> entry_keys;
    for (const auto& [k, v] : rep["entries"][0].items()) entry_keys.push_back(k);
    CHECK(entry_keys == std::vector<std::string>{"t", "k", "lhs", "rhs", "margin"});
    const std::string ts = rep["timestamp"];
    CHECK(ts.size() == 20);
    CHECK(ts[10] == 'T');
    CHECK(ts.back() == 'Z');
}

TEST_CASE("verify limit records h(100)") {
    auto r = invoke({"verify", "--suite", "limit", "--grid", "10:10000:4:log"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& entries = j[0]["entries"];
    REQUIRE(entries.size() == 4);
    CHECK(entries[1]["t"].get<double>() == doctest::Approx(100));
    CHECK(std::abs(entries[1]["lhs"].get<double>()) < 1e-8);
}

TEST_CASE("verify cm_direct with kmax 0 is positivity of h") {
    auto r = invoke({"verify", "--suite", "cm_direct", "--kmax", "0", "--grid", "0.1:100:20:log"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j[0]["k_max"] == 0);
    CHECK(j[0]["entries"].size() == 20);
    for (const auto& e : j[0]["entries"]) {
        CHECK(e["k"] == 0);
        CHECK(e["margin"].get<double>() > 0);
    }
}

TEST_CASE("verify output is deterministic") {
    const std::vector<std::string> args{"verify", "--suite", "thm13", "--suite", "cm_laplace",
                                        "--kmax", "2", "--grid", "0.5:10:6:log"};
    const auto a = nlohmann::json::parse(invoke(args).out);
    const auto b = nlohmann::json::parse(invoke(args).out);
    CHECK(strip_volatile(a).dump() == strip_volatile(b).dump());
    CHECK(a.size() == 2);
}

TEST_CASE("verify csv and text formats") {
    auto r = invoke({"verify", "--suite", "polybound", "--suite", "ineq1", "--grid", "1:2:3:lin",
                     "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# suite: polybound");
    std::getline(lines, line);
    CHECK(line == "t,k,lhs,rhs,margin");
    std::getline(lines, line);
    CHECK(line.rfind("1,,", 0) == 0);
    CHECK(r.out.find("# suite: ineq1") != std::string::npos);

    r = invoke({"verify", "--suite", "kernel_pos", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("verify --out writes a file") {
    const std::string path = "test_cli_report.json";
    auto r = invoke({"verify", "--suite", "ineq1", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j[0]["suite"] == "ineq1");
    std::remove(path.c_str());
}

TEST_CASE("verify exit codes") {
    CHECK(invoke({"verify", "--suite", "nope"}).code == 2);
    CHECK(invoke({"verify", "--kmax", "30", "--suite", "cm_direct"}).code == 2);
    CHECK(invoke({"verify", "--kmax", "-1", "--suite", "cm_direct"}).code == 2);
    CHECK(invoke({"verify", "--grid", "1:2:3", "--suite", "ineq1"}).code == 2);
    CHECK(invoke({"verify", "--grid", "2:1:3:log", "--suite", "ineq1"}).code == 2);
    CHECK(invoke({"verify", "--grid", "1:2:1:log", "--suite", "ineq1"}).code == 2);
    CHECK(invoke({"verify", "--tol", "-1", "--suite", "representations"}).code == 2);
    CHECK(invoke({"verify", "--format", "xml", "--suite", "ineq1"}).code == 2);
    CHECK(invoke({"verify", "--suite", "limit", "--grid", "1:100:5:log"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    // e^{1/t} overflows at t = 1e-5, so the suite fails.
    CHECK(invoke({"verify", "--suite", "ineq1", "--grid", "1e-5:1:3:log"}).code == 1);
}

TEST_CASE("precision environment variable") {
    ::setenv(monotone::cli::kPrecisionEnv, "abc", 1);
    CHECK(invoke({"eval", "trigamma", "1"}).code == 2);
    ::setenv(monotone::cli::kPrecisionEnv, "128", 1);
    auto r = invoke({"eval", "trigamma", "1"});
    CHECK(r.code == 0);
    CHECK(r.err.find("64 bits") != std::string::npos);
    ::setenv(monotone::cli::kPrecisionEnv, "53", 1);
    CHECK(invoke({"eval", "trigamma", "1"}).code == 0);
    ::unsetenv(monotone::cli::kPrecisionEnv);
}

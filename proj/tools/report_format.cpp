#include "report_format.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace monotone::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number(Real x) {
    const double d = static_cast<double>(x);
    if (!std::isfinite(d)) return nullptr;
    return d;
}

ordered_json to_json(const verify::CheckReport& r, const std::string& timestamp) {
    ordered_json j;
    j["suite"] = r.suite_id;
    j["tol"] = number(r.tol);
    j["grid"] = {
        {"lo", number(r.grid.lo)},
        {"hi", number(r.grid.hi)},
        {"count", r.grid.count},
        {"spacing", r.grid.spacing == verify::Spacing::log ? "log" : "lin"},
    };
    j["k_max"] = r.k_max ? ordered_json(*r.k_max) : ordered_json(nullptr);
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries) {
        entries.push_back({
            {"t", number(e.point)},
            {"k", e.k ? ordered_json(*e.k) : ordered_json(nullptr)},
            {"lhs", number(e.lhs)},
            {"rhs", number(e.rhs)},
            {"margin", number(e.margin)},
        });
    }
    j["entries"] = std::move(entries);
    j["min_margin"] = number(r.min_margin);
    j["pass"] = r.pass;
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["timestamp"] = timestamp;
    return j;
}

}  // namespace

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string shortest(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_json(std::ostream& os, const std::vector<verify::CheckReport>& reports,
                const std::string& timestamp) {
    ordered_json all = ordered_json::array();
    for (const auto& r : reports) all.push_back(to_json(r, timestamp));
    os << all.dump(2) << '\n';
}

void write_csv(std::ostream& os, const std::vector<verify::CheckReport>& reports) {
    for (const auto& r : reports) {
        os << "# suite: " << r.suite_id << '\n';
        os << "t,k,lhs,rhs,margin\n";
        for (const auto& e : r.entries) {
            os << shortest(double(e.point)) << ',';
            if (e.k) os << *e.k;
            os << ',' << shortest(double(e.lhs)) << ',' << shortest(double(e.rhs)) << ','
               << shortest(double(e.margin)) << '\n';
        }
    }
}

void write_text(std::ostream& os, const std::vector<verify::CheckReport>& reports) {
    for (const auto& r : reports) {
        os << std::left << std::setw(16) << r.suite_id << (r.pass ? "PASS" : "FAIL")
           << "  entries=" << r.entries.size() << "  min_margin=" << shortest(double(r.min_margin))
           << "  elapsed=" << std::setprecision(3) << r.elapsed_seconds << "s\n";
        for (const auto& e : r.entries) {
            if (e.error.empty() && e.margin > 0) continue;
            os << "    " << e.label << " t=" << shortest(double(e.point));
            if (e.k) os << " k=" << *e.k;
            if (!e.error.empty()) {
                os << " error: " << e.error << '\n';
            } else {
                os << " margin=" << shortest(double(e.margin)) << '\n';
            }
        }
    }
}

}  // namespace monotone::cli

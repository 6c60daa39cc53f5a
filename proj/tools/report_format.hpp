// JSON / CSV / text serialization of verification reports.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "monotone/verify.hpp"

namespace monotone::cli {

enum class Format { json, csv, text };

/// RFC-3339 UTC timestamp of the current time, second resolution.
std::string utc_timestamp();

/// Shortest decimal string that round-trips the value as a double.
std::string shortest(double x);

void write_json(std::ostream& os, const std::vector<verify::CheckReport>& reports,
                const std::string& timestamp);
void write_csv(std::ostream& os, const std::vector<verify::CheckReport>& reports);
void write_text(std::ostream& os, const std::vector<verify::CheckReport>& reports);

}  // namespace monotone::cli

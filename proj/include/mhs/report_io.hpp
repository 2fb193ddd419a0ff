#pragma once

// JSON and table rendering of verification reports, and JSON parsing back.
// Integers (modulus, residues, rationals) travel as decimal strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "mhs/congruence.hpp"

namespace mhs {

nlohmann::ordered_json report_to_json(const CongruenceReport& rep);
CongruenceReport report_from_json(const nlohmann::json& j);

// {"reports": [...], "summary": {"total", "passed", "failed"}}
std::string render_json(const std::vector<CongruenceReport>& reports);
std::vector<CongruenceReport> parse_reports(const std::string& document);

// One line per report plus a summary line. elapsed_ms is left out so the
// output is byte-identical across runs.
std::string render_table(const std::vector<CongruenceReport>& reports);
std::string table_line(const CongruenceReport& rep);

}  // namespace mhs

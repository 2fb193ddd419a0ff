#include "mhs/report_io.hpp"

#include <fmt/format.h>

namespace mhs {

namespace {

nlohmann::ordered_json side(const std::optional<ReportValue>& v) {
    if (!v) return nullptr;
    return value_string(*v);
}

std::optional<ReportValue> parse_side(const nlohmann::json& j, std::int64_t modulus) {
    if (j.is_null()) return std::nullopt;
    const auto text = j.get<std::string>();
    if (modulus == 0) return ReportValue{Rational::parse(text)};
    return ReportValue{Residue(std::stoll(text), modulus)};
}

}  // namespace

nlohmann::ordered_json report_to_json(const CongruenceReport& rep) {
    nlohmann::ordered_json j;
    j["id"] = rep.id;
    j["params"] = rep.params;
    j["modulus"] = std::to_string(rep.modulus);
    j["lhs"] = side(rep.lhs);
    j["rhs"] = side(rep.rhs);
    j["pass"] = rep.pass;
    j["method"] = to_string(rep.method);
    j["elapsed_ms"] = rep.elapsed_ms;
    j["notes"] = rep.notes;
    return j;
}

CongruenceReport report_from_json(const nlohmann::json& j) {
    CongruenceReport rep;
    rep.id = j.at("id").get<std::string>();
    rep.params = j.at("params").get<std::string>();
    rep.modulus = std::stoll(j.at("modulus").get<std::string>());
    rep.lhs = parse_side(j.at("lhs"), rep.modulus);
    rep.rhs = parse_side(j.at("rhs"), rep.modulus);
    rep.pass = j.at("pass").get<bool>();
    rep.method = parse_method(j.at("method").get<std::string>());
    rep.elapsed_ms = j.at("elapsed_ms").get<double>();
    rep.notes = j.at("notes").get<std::string>();
    return rep;
}

std::string render_json(const std::vector<CongruenceReport>& reports) {
    nlohmann::ordered_json doc;
    doc["reports"] = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        doc["reports"].push_back(report_to_json(r));
        passed += r.pass;
    }
    doc["summary"] = {{"total", reports.size()}, {"passed", passed}, {"failed", reports.size() - passed}};
    return doc.dump(2) + "\n";
}

std::vector<CongruenceReport> parse_reports(const std::string& document) {
    const auto doc = nlohmann::json::parse(document);
    std::vector<CongruenceReport> out;
    for (const auto& j : doc.at("reports")) out.push_back(report_from_json(j));
    return out;
}

std::string table_line(const CongruenceReport& rep) {
    auto show = [](const std::optional<ReportValue>& v) { return v ? value_string(*v) : std::string("undefined"); };
    std::string line = fmt::format("{} {} [{}] mod {} lhs={} rhs={} ({})", rep.pass ? "PASS" : "FAIL", rep.id, rep.params,
                                   rep.modulus == 0 ? std::string("exact") : std::to_string(rep.modulus), show(rep.lhs),
                                   show(rep.rhs), to_string(rep.method));
    if (!rep.notes.empty()) line += " :: " + rep.notes;
    return line;
}

std::string render_table(const std::vector<CongruenceReport>& reports) {
    std::string out;
    std::size_t passed = 0;
    for (const auto& r : reports) {
        out += table_line(r) + "\n";
        passed += r.pass;
    }
    out += fmt::format("{} report(s): {} passed, {} failed\n", reports.size(), passed, reports.size() - passed);
    return out;
}

}  // namespace mhs

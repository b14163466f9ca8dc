#include "emt/report_io.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace emt {

using nlohmann::json;

std::string measure_name(MeasureKind kind) {
    return kind == MeasureKind::bures ? "bures" : "geometric";
}

MeasureKind measure_from_name(const std::string& name) {
    if (name == "bures") return MeasureKind::bures;
    if (name == "geometric") return MeasureKind::geometric;
    throw std::invalid_argument("unknown measure '" + name + "' (expected bures or geometric)");
}

std::string report_to_json(const MonogamyReport& report) {
    json j;
    j["measure"] = measure_name(report.measure);
    j["alpha"] = report.alpha;
    j["lhs"] = report.lhs;
    j["rhs_terms"] = report.rhs_terms;
    j["residual"] = report.residual;
    j["state_id"] = report.state_id;
    return j.dump();
}

MonogamyReport report_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report line: ") + e.what());
    }
    MonogamyReport rep;
    try {
        rep.measure = measure_from_name(j.at("measure").get<std::string>());
        rep.alpha = j.at("alpha").get<double>();
        rep.lhs = j.at("lhs").get<double>();
        rep.rhs_terms = j.at("rhs_terms").get<std::vector<double>>();
        rep.residual = j.at("residual").get<double>();
        rep.state_id = j.value("state_id", std::string{});
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("report line: ") + e.what());
    }
    return rep;
}

std::string summary_to_json(const CampaignSummary& summary) {
    json j;
    j["total_checks"] = summary.total_checks;
    j["violations"] = summary.violations;
    j["min_residual"] = summary.min_residual;
    j["residual_quantiles"] = {summary.residual_quantiles[0], summary.residual_quantiles[1],
                               summary.residual_quantiles[2]};
    j["runtime_seconds"] = summary.runtime_seconds;
    return j.dump();
}

void write_reports_jsonl(std::ostream& out, const std::vector<MonogamyReport>& reports) {
    for (const MonogamyReport& rep : reports) out << report_to_json(rep) << "\n";
}

}  // namespace emt

// JSON serialization of monogamy reports and campaign summaries.
// Reports stream as JSON-lines; summaries are a single JSON document.

#pragma once

#include <iosfwd>
#include <string>

#include "emt/monogamy.hpp"

namespace emt {

std::string measure_name(MeasureKind kind);
MeasureKind measure_from_name(const std::string& name);

std::string report_to_json(const MonogamyReport& report);
MonogamyReport report_from_json(const std::string& line);

std::string summary_to_json(const CampaignSummary& summary);

void write_reports_jsonl(std::ostream& out, const std::vector<MonogamyReport>& reports);

}  // namespace emt

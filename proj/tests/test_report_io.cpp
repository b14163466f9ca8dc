#include <doctest.h>

#include <sstream>

#include "emt/report_io.hpp"

using namespace emt;

TEST_CASE("report JSON round-trip") {
    MonogamyReport rep;
    rep.measure = MeasureKind::geometric;
    rep.alpha = 1.5;
    rep.lhs = 0.123456789012345678;
    rep.rhs_terms = {0.01, 0.002, 0.0003};
    rep.residual = rep.lhs - 0.01 - 0.002 - 0.0003;
    rep.state_id = "haar:4:17";

    const std::string line = report_to_json(rep);
    const MonogamyReport back = report_from_json(line);
    CHECK(back.measure == rep.measure);
    CHECK(back.alpha == rep.alpha);
    CHECK(back.lhs == rep.lhs);  // lossless double round-trip
    CHECK(back.rhs_terms == rep.rhs_terms);
    CHECK(back.residual == rep.residual);
    CHECK(back.state_id == rep.state_id);
}

TEST_CASE("report parser rejects malformed lines") {
    CHECK_THROWS_AS(report_from_json("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(report_from_json("{\"measure\": \"bures\"}"), std::invalid_argument);
    CHECK_THROWS_AS(report_from_json("{\"measure\": \"tsallis\", \"alpha\": 1, \"lhs\": 0, "
                                     "\"rhs_terms\": [], \"residual\": 0}"),
                    std::invalid_argument);
}

TEST_CASE("summary JSON carries the schema field names") {
    CampaignSummary sum;
    sum.total_checks = 10;
    sum.violations = 1;
    sum.min_residual = -2e-9;
    sum.residual_quantiles[0] = 0.1;
    sum.residual_quantiles[1] = 0.2;
    sum.residual_quantiles[2] = 0.3;
    const std::string doc = summary_to_json(sum);
    CHECK(doc.find("\"total_checks\":10") != std::string::npos);
    CHECK(doc.find("\"violations\":1") != std::string::npos);
    CHECK(doc.find("\"min_residual\"") != std::string::npos);
    CHECK(doc.find("\"residual_quantiles\"") != std::string::npos);
    CHECK(doc.find("\"runtime_seconds\"") != std::string::npos);
}

TEST_CASE("JSONL writer emits one line per report") {
    std::vector<MonogamyReport> reports(3);
    std::ostringstream out;
    write_reports_jsonl(out, reports);
    std::istringstream in(out.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        CHECK_NOTHROW(report_from_json(line));
        ++count;
    }
    CHECK(count == 3);
}

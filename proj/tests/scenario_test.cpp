#include "ufix/scenario.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "ufix/serialize.hpp"
#include "ufix/solver.hpp"

using namespace ufix;

namespace {

TEST(Scenario, PackagedHalvingParsesAndBinds) {
    const ScenarioConfig s = scenario_from_json(halving_scenario());
    EXPECT_EQ(s.family.dimension(), 1u);
    EXPECT_EQ(s.family.size(), 1u);
    EXPECT_EQ(s.map.descriptor(), "affine_contraction(dim=1)");
    EXPECT_EQ(s.params.r, 1);
    EXPECT_EQ(s.x0, Point{1.0});
    EXPECT_DOUBLE_EQ(s.solve.tolerance, 1e-8);
    EXPECT_EQ(s.scan_budget, 10000u);
    EXPECT_EQ(s.scan_seed, 42u);
    ASSERT_EQ(s.verify_k.size(), 1u);
    EXPECT_DOUBLE_EQ(s.verify_k[0], 0.7);  // defaults to b + c
    // No divergence_guard in the document: the default kicks in.
    EXPECT_DOUBLE_EQ(s.solve.divergence_guard, 2e12);
}

TEST(Scenario, AllPackagedScenariosBind) {
    EXPECT_NO_THROW(scenario_from_json(halving_scenario()));
    EXPECT_NO_THROW(scenario_from_json(two_branch_scenario()));
    EXPECT_NO_THROW(scenario_from_json(corollary_scenario()));
    EXPECT_NO_THROW(scenario_from_json(uniqueness_scenario()));
}

TEST(Scenario, ValidationFailures) {
    // Missing coefficient for the second family member.
    nlohmann::json doc = halving_scenario();
    doc["space"]["family"].push_back(
        {{"kind", "absolute_difference"}, {"weight", 2.0}, {"coords", {0}}});
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc["params"]["coefficients"][0]["b"] = 0.5;  // b + c = 1
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc["map"]["kind"] = "warp";
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc["solve"]["x0"] = {1.0, 2.0};
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc["scan"]["hi"] = {-1.0};  // degenerate region
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc["space"]["family"][0]["kind"] = "supremum";
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc["verify"] = {{"k", {1.5}}};
    EXPECT_THROW(scenario_from_json(doc), ConfigError);

    doc = halving_scenario();
    doc.erase("scan");
    EXPECT_THROW(scenario_from_json(doc), ConfigError);
}

TEST(Scenario, ParseErrorsAreLineAnchored) {
    const std::string broken = "{\n  \"space\": {\n  \"oops\"\n}";
    try {
        parse_config_text(broken, "cfg.json");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("cfg.json:"), std::string::npos);
        EXPECT_NE(msg.find(":4"), std::string::npos);  // error surfaces on line 4
    }
}

TEST(Scenario, OverridesApplyByDottedPath) {
    nlohmann::json doc = halving_scenario();
    apply_override(doc, "solve.tolerance=1e-10");
    apply_override(doc, "params.coefficients.0.a=0.6");
    apply_override(doc, "map.kind=identity");
    apply_override(doc, "scan.seed=7");

    EXPECT_DOUBLE_EQ(doc["solve"]["tolerance"].get<double>(), 1e-10);
    EXPECT_DOUBLE_EQ(doc["params"]["coefficients"][0]["a"].get<double>(), 0.6);
    EXPECT_EQ(doc["map"]["kind"].get<std::string>(), "identity");
    const ScenarioConfig s = scenario_from_json(doc);
    EXPECT_EQ(s.map.descriptor(), "identity");
    EXPECT_EQ(s.scan_seed, 7u);

    EXPECT_THROW(apply_override(doc, "params.coefficients.4.a=0.5"), ConfigError);
    EXPECT_THROW(apply_override(doc, "=3"), ConfigError);
    EXPECT_THROW(apply_override(doc, "no-equals-sign"), ConfigError);
}

TEST(TraceCsv, RoundTripsBitExactly) {
    const ScenarioConfig s = scenario_from_json(two_branch_scenario());
    const SolveResult r = solve(s.map, s.family, s.x0, s.solve);

    const std::string csv = trace_to_csv(r.trace);
    const OrbitTrace parsed = trace_from_csv(csv);

    ASSERT_EQ(parsed.points.size(), r.trace.points.size());
    EXPECT_EQ(parsed.points, r.trace.points);
    EXPECT_EQ(parsed.step_distances, r.trace.step_distances);
    EXPECT_EQ(parsed.residuals, r.trace.residuals);

    EXPECT_TRUE(verify_orbit_membership(s.map, parsed));
    EXPECT_TRUE(verify_step_distances(s.family, parsed));
}

TEST(TraceCsv, HeaderAndLastRowShape) {
    const ScenarioConfig s = scenario_from_json(halving_scenario());
    const SolveResult r = solve(s.map, s.family, s.x0, s.solve);
    const std::string csv = trace_to_csv(r.trace);

    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "n,x_0,step_d_0,res_d_0");

    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    // The final row has no outgoing step: empty step cell.
    EXPECT_NE(last.find(",,"), std::string::npos);
}

TEST(TraceCsv, RejectsMalformedDocuments) {
    EXPECT_THROW(trace_from_csv(""), std::invalid_argument);
    EXPECT_THROW(trace_from_csv("a,b,c\n"), std::invalid_argument);
    EXPECT_THROW(trace_from_csv("n,x_0,step_d_0,res_d_0\n0,1.0,0.5\n"),
                 std::invalid_argument);
    // Step cell present on the only row: inconsistent with a 1-point trace.
    EXPECT_THROW(trace_from_csv("n,x_0,step_d_0,res_d_0\n0,1.0,0.5,0.5\n"),
                 std::invalid_argument);
    EXPECT_THROW(trace_from_csv("n,x_0,step_d_0,res_d_0\n0,oops,,0.5\n"),
                 std::invalid_argument);
    // Steps may stop only on the final row.
    EXPECT_THROW(trace_from_csv("n,x_0,step_d_0,res_d_0\n"
                                "0,1.0,,0.5\n1,0.5,0.25,0.25\n2,0.25,,0.125\n"),
                 std::invalid_argument);
}

TEST(SolveReportJson, CarriesVerification) {
    const ScenarioConfig s = scenario_from_json(halving_scenario());
    const SolveResult r = solve(s.map, s.family, s.x0, s.solve);
    SolveVerification v;
    v.k = s.verify_k;
    v.geometric_decay = verify_geometric_decay(r.trace, v.k).ok;
    v.tail_bound = verify_tail_bound(r.trace, s.family, v.k).ok;

    const nlohmann::json j = to_json(r.report, v);
    EXPECT_EQ(j.at("status"), "fixed_point_found");
    EXPECT_TRUE(j.at("verification").at("geometric_decay").get<bool>());
    EXPECT_TRUE(j.at("verification").at("tail_bound").get<bool>());
    EXPECT_DOUBLE_EQ(j.at("verification").at("k")[0].get<double>(), 0.7);
    EXPECT_EQ(j.at("iterations_used").get<std::size_t>(), r.report.iterations_used);
}

}  // namespace

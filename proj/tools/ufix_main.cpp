// Command-line front end: evaluate the sampled contraction condition,
// run the nearest-point orbit solver, or execute a packaged demo.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ufix/checker.hpp"
#include "ufix/scenario.hpp"
#include "ufix/serialize.hpp"
#include "ufix/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ufix::ConfigError("cannot write output file: " + path.string());
    out << content;
}

nlohmann::json load_with_overrides(const std::string& config_path,
                                   const std::vector<std::string>& extras,
                                   const std::string& seed_override) {
    nlohmann::json doc = ufix::load_config_file(config_path);
    for (const std::string& raw : extras) {
        std::string arg = raw;
        if (arg.rfind("--", 0) == 0) arg = arg.substr(2);
        ufix::apply_override(doc, arg);
    }
    if (!seed_override.empty()) ufix::apply_override(doc, "scan.seed=" + seed_override);
    return doc;
}

struct SolveOutcome {
    ufix::SolveResult result;
    ufix::SolveVerification verification;
    bool ok = false;  // converged and both verifications passed
};

SolveOutcome run_solve_with_verification(const ufix::ScenarioConfig& scenario) {
    SolveOutcome out{ufix::solve(scenario.map, scenario.family, scenario.x0, scenario.solve),
                     {}, false};
    out.verification.k = scenario.verify_k;
    if (out.result.trace.points.size() < 2) {
        // No steps: the start already satisfied the residual criterion.
        out.verification.geometric_decay = true;
        out.verification.tail_bound = true;
    } else {
        out.verification.geometric_decay =
            ufix::verify_geometric_decay(out.result.trace, scenario.verify_k).ok;
        out.verification.tail_bound =
            ufix::verify_tail_bound(out.result.trace, scenario.family, scenario.verify_k).ok;
    }
    out.ok = out.result.report.status == ufix::SolveStatus::FixedPointFound &&
             out.verification.geometric_decay && out.verification.tail_bound;
    return out;
}

int cmd_check(const nlohmann::json& doc, const std::filesystem::path& out_dir) {
    const ufix::ScenarioConfig scenario = ufix::scenario_from_json(doc);
    const ufix::ConditionReport report =
        ufix::scan(scenario.map, scenario.params, scenario.family, scenario.scan_region,
                   scenario.scan_budget, scenario.scan_seed);
    write_file(out_dir / "condition_report.json", ufix::to_document(ufix::to_json(report)));

    std::cout << "condition " << (report.holds_on_sample ? "holds" : "violated")
              << " on sample: pairs_checked=" << report.pairs_checked
              << " violations=" << report.violations.size() << "\n";
    return report.holds_on_sample ? kExitOk : kExitFailed;
}

int cmd_solve(const nlohmann::json& doc, const std::filesystem::path& out_dir) {
    const ufix::ScenarioConfig scenario = ufix::scenario_from_json(doc);
    const SolveOutcome outcome = run_solve_with_verification(scenario);
    const ufix::SolveReport& report = outcome.result.report;

    write_file(out_dir / "trace.csv", ufix::trace_to_csv(outcome.result.trace));
    write_file(out_dir / "solve_report.json",
               ufix::to_document(ufix::to_json(report, outcome.verification)));

    std::cout << "status=" << ufix::to_string(report.status)
              << " iterations=" << report.iterations_used << " decay="
              << (outcome.verification.geometric_decay ? "ok" : "violated") << " tail="
              << (outcome.verification.tail_bound ? "ok" : "violated") << "\n";
    return outcome.ok ? kExitOk : kExitFailed;
}

double max_residual(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

void print_solve_summary(const ufix::ScenarioConfig& scenario, const SolveOutcome& outcome,
                         const std::string& condition_line) {
    const ufix::SolveReport& report = outcome.result.report;
    std::cout << "  map:             " << scenario.map.descriptor() << "\n"
              << "  status:          " << ufix::to_string(report.status) << "\n"
              << "  iterations:      " << report.iterations_used << "\n"
              << "  final residual:  " << max_residual(report.final_residual) << "\n"
              << "  rate estimate:   ";
    for (std::size_t i = 0; i < report.rate_estimates.size(); ++i)
        std::cout << (i ? ", " : "") << report.rate_estimates[i];
    std::cout << "\n  condition:       " << condition_line << "\n"
              << "  decay verified:  " << (outcome.verification.geometric_decay ? "yes" : "no")
              << "\n  tail verified:   " << (outcome.verification.tail_bound ? "yes" : "no")
              << "\n";
}

int demo_scenario_run(const nlohmann::json& doc) {
    const ufix::ScenarioConfig scenario = ufix::scenario_from_json(doc);
    const ufix::ConditionReport condition =
        ufix::scan(scenario.map, scenario.params, scenario.family, scenario.scan_region,
                   scenario.scan_budget, scenario.scan_seed);
    const SolveOutcome outcome = run_solve_with_verification(scenario);
    print_solve_summary(scenario, outcome,
                        std::string(condition.holds_on_sample ? "holds" : "violated") +
                            " on sample (" + std::to_string(condition.pairs_checked) +
                            " pairs)");
    return outcome.ok ? kExitOk : kExitFailed;
}

int demo_corollary() {
    const nlohmann::json doc = ufix::corollary_scenario();
    const ufix::ScenarioConfig scenario = ufix::scenario_from_json(doc);
    const double b = scenario.params.coefficients[0].b;
    const double c = scenario.params.coefficients[0].c;

    // The packaged map is single-valued; drive the minus-sign condition with
    // the underlying point map.
    const ufix::SingleValuedMap t = [&scenario](const ufix::Point& x) {
        return ufix::step(scenario.map, scenario.family, x);
    };
    const ufix::ConditionReport condition =
        ufix::scan_corollary(t, b, c, scenario.family, scenario.scan_region,
                             scenario.scan_budget, scenario.scan_seed);
    const SolveOutcome outcome = run_solve_with_verification(scenario);
    print_solve_summary(scenario, outcome,
                        std::string("minus-sign form ") +
                            (condition.holds_on_sample ? "holds" : "violated") +
                            " on sample (" + std::to_string(condition.pairs_checked) +
                            " pairs)");
    return outcome.ok && condition.holds_on_sample ? kExitOk : kExitFailed;
}

int demo_uniqueness() {
    const nlohmann::json doc = ufix::uniqueness_scenario();
    const ufix::ScenarioConfig scenario = ufix::scenario_from_json(doc);
    const std::vector<ufix::Point> starts{ufix::Point{-3.0}, ufix::Point{1.0},
                                          ufix::Point{7.0}};
    const ufix::UniquenessProbeReport probe = ufix::uniqueness_probe(
        scenario.map, scenario.family, scenario.params, starts, scenario.solve);

    std::cout << "  map:             " << scenario.map.descriptor() << "\n";
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::cout << "  start " << starts[s][0] << ": status="
                  << ufix::to_string(probe.runs[s].status) << " limit=";
        for (std::size_t j = 0; j < probe.runs[s].final_point.dimension(); ++j)
            std::cout << (j ? "," : "") << probe.runs[s].final_point[j];
        std::cout << " iterations=" << probe.runs[s].iterations_used << "\n";
    }
    std::cout << "  worst pair gap:  " << probe.worst_pair_distance << "\n"
              << "  threshold:       " << probe.threshold << "\n"
              << "  probe:           " << (probe.pass ? "pass" : "fail") << "\n";
    return probe.pass ? kExitOk : kExitFailed;
}

int cmd_demo(const std::string& name) {
    std::cout << "demo: " << name << "\n";
    if (name == "halving") return demo_scenario_run(ufix::halving_scenario());
    if (name == "two-branch") return demo_scenario_run(ufix::two_branch_scenario());
    if (name == "corollary") return demo_corollary();
    if (name == "uniqueness") return demo_uniqueness();
    std::cerr << "unknown demo '" << name
              << "'; available: halving, two-branch, corollary, uniqueness\n";
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed points of set-valued contractions over pseudometric families"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string seed_override;
    std::string demo_name;

    CLI::App* check = app.add_subcommand("check", "sample the contraction condition");
    check->add_option("--config", config_path, "scenario config (JSON)")->required();
    check->add_option("--out", out_dir, "output directory");
    check->add_option("--seed", seed_override, "override scan.seed");
    check->allow_extras();

    CLI::App* solve = app.add_subcommand("solve", "run the nearest-point orbit solver");
    solve->add_option("--config", config_path, "scenario config (JSON)")->required();
    solve->add_option("--out", out_dir, "output directory");
    solve->add_option("--seed", seed_override, "override scan.seed");
    solve->allow_extras();

    CLI::App* demo = app.add_subcommand("demo", "run a packaged scenario end to end");
    demo->add_option("name", demo_name, "halving | two-branch | corollary | uniqueness")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (check->parsed())
            return cmd_check(load_with_overrides(config_path, check->remaining(), seed_override),
                             out_dir);
        if (solve->parsed())
            return cmd_solve(load_with_overrides(config_path, solve->remaining(), seed_override),
                             out_dir);
        return cmd_demo(demo_name);
    } catch (const ufix::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

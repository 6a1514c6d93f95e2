#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opdyn/scenario.hpp"

// Exit codes: 0 success, 1 failed check, 2 bad arguments or scenario content,
// 3 filesystem trouble.
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

int cmd_simulate(const std::string& scenario_file, const std::string& out_dir) {
    const opdyn::Scenario s = opdyn::load_scenario(scenario_file);
    const opdyn::RunManifest manifest = opdyn::run_scenario(s, out_dir);
    std::fputs(manifest.to_json().c_str(), stdout);
    return kExitOk;
}

int cmd_check(const std::string& scenario_file) {
    const opdyn::Scenario s = opdyn::load_scenario(scenario_file);
    const std::vector<opdyn::CheckReport> reports = opdyn::run_checks(s);
    bool all_passed = true;
    for (const opdyn::CheckReport& r : reports) {
        if (r.passed) {
            std::printf("[ok]   %s\n", r.name.c_str());
        } else {
            all_passed = false;
            const opdyn::CheckViolation& v = *r.first_violation;
            std::printf("[FAIL] %s: t=%d agent=%d lhs=%s rhs=%s slack=%s\n", r.name.c_str(), v.t,
                        v.agent, opdyn::format_double(v.lhs).c_str(),
                        opdyn::format_double(v.rhs).c_str(), opdyn::format_double(v.slack).c_str());
        }
    }
    std::printf("%zu checks, %s\n", reports.size(), all_passed ? "all passed" : "FAILURES");
    return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_analyze(const std::string& scenario_file) {
    const opdyn::Scenario s = opdyn::load_scenario(scenario_file);
    const opdyn::SimulationTrace trace = opdyn::simulate_scenario(s);
    std::fputs(opdyn::analysis_json_text(s, trace).c_str(), stdout);
    return kExitOk;
}

int cmd_sweep(const std::string& scenario_file, const std::string& out_dir,
              const std::vector<double>& c_grid, std::vector<int> steps_grid) {
    const opdyn::Scenario s = opdyn::load_scenario(scenario_file);
    if (steps_grid.empty()) steps_grid.push_back(s.steps);
    const std::vector<opdyn::SweepCell> cells =
        opdyn::run_sweep(s, c_grid, steps_grid, out_dir);
    std::printf("%zu runs written under %s (summary: sweep.csv)\n", cells.size(), out_dir.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opinion dynamics: simulate belief updates on influence graphs,"
                 " measure polarization, analyze and check convergence"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string out_dir;
    std::vector<double> c_grid;
    std::vector<int> steps_grid;

    CLI::App* simulate = app.add_subcommand("simulate", "run a scenario and write artifacts");
    simulate->add_option("scenario", scenario_file, "scenario JSON file")->required();
    simulate->add_option("-o,--out", out_dir, "output directory")->required();

    CLI::App* check = app.add_subcommand("check", "run invariant checks on a scenario");
    check->add_option("scenario", scenario_file, "scenario JSON file")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "print scenario analysis as JSON");
    analyze->add_option("scenario", scenario_file, "scenario JSON file")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "run a grid of influence constants and budgets");
    sweep->add_option("scenario", scenario_file, "scenario JSON file")->required();
    sweep->add_option("-o,--out", out_dir, "output directory")->required();
    sweep->add_option("--c-grid", c_grid, "comma-separated influence constants")
        ->required()
        ->delimiter(',');
    sweep->add_option("--steps-grid", steps_grid, "comma-separated step budgets (default: scenario steps)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (app.got_subcommand(simulate)) return cmd_simulate(scenario_file, out_dir);
        if (app.got_subcommand(check)) return cmd_check(scenario_file);
        if (app.got_subcommand(analyze)) return cmd_analyze(scenario_file);
        if (app.got_subcommand(sweep)) return cmd_sweep(scenario_file, out_dir, c_grid, steps_grid);
    } catch (const opdyn::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const opdyn::ScenarioError& e) {
        std::fprintf(stderr, "scenario error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
    return kExitBadInput;  // unreachable: a subcommand is required
}

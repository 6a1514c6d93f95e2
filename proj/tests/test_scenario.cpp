#include "opdyn/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using namespace opdyn;
namespace fs = std::filesystem;

namespace {

const char* kMinimalScenario = R"({
  "n": 3,
  "beliefs": {"kind": "uniform"},
  "influence": {"kind": "clique", "c": 0.5},
  "update": "regular",
  "steps": 10
})";

std::string field_of(const char* json_text) {
    try {
        parse_scenario(json_text);
    } catch (const ScenarioError& e) {
        return e.field();
    }
    return "(no error)";
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "opdyn_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("minimal scenario parses with polarization defaults") {
    const Scenario s = parse_scenario(kMinimalScenario);
    CHECK(s.n == 3);
    CHECK(s.beliefs.kind == BeliefConfig::Uniform);
    CHECK(s.influence.kind == GraphKind::Clique);
    CHECK(s.influence.c == 0.5);
    CHECK(s.update == UpdateKind::Regular);
    CHECK(s.steps == 10);
    CHECK(!s.stop_gap);
    CHECK(s.polarization.bins == 5);
    CHECK(s.polarization.alpha == 1.6);
    CHECK(s.polarization.scale == 1000.0);
}

TEST_CASE("full scenario round trip") {
    const Scenario s = parse_scenario(R"({
      "n": 2,
      "beliefs": {"kind": "explicit", "values": [0.25, 0.75]},
      "influence": {"kind": "explicit", "weights": [[0, 1], [1, 0]]},
      "update": "confirmation_bias",
      "steps": 5,
      "stop_gap": 0.001,
      "polarization": {"bins": 3, "alpha": 1.2, "k": 10}
    })");
    CHECK(s.beliefs.values == std::vector<double>{0.25, 0.75});
    CHECK(s.influence.weights == std::vector<double>{0.0, 1.0, 1.0, 0.0});
    CHECK(s.update == UpdateKind::ConfirmationBias);
    CHECK(s.stop_gap == 0.001);
    CHECK(s.polarization.bins == 3);
    CHECK(s.polarization.alpha == 1.2);
    CHECK(s.polarization.scale == 10.0);
    CHECK(scenario_beliefs(s).values() == std::vector<double>{0.25, 0.75});
    CHECK(scenario_influence(s).weight(0, 1) == 1.0);
}

TEST_CASE("parse errors name the offending field") {
    CHECK(field_of("{") == "(root)");
    CHECK(field_of("[1,2]") == "(root)");
    CHECK(field_of(R"({"beliefs":{"kind":"uniform"}})") == "n");
    CHECK(field_of(R"({"n":0,"beliefs":{"kind":"uniform"}})") == "n");
    CHECK(field_of(R"({"n":2})") == "beliefs");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"nope"}})") == "beliefs.kind");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"tripolar"}})") == "beliefs.kind");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"explicit","values":[0.5]}})") == "beliefs.values");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"explicit","values":[0.5,2.0]}})") ==
          "beliefs.values[1]");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"uniform","values":[0.1,0.2]}})") ==
          "beliefs.values");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"uniform"}})") == "influence");
    CHECK(field_of(R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"warp"}})") ==
          "influence.kind");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":1.5}})") ==
          "influence.c");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"unrelenting"}})") ==
          "influence.kind");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"explicit","weights":[[0,1]]}})") ==
          "influence.weights");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"explicit","weights":[[0.2,1],[1,0]]}})") ==
          "influence.weights[0][0]");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5}})") ==
          "update");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"odd"})") ==
          "update");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"regular"})") ==
          "steps");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"regular","steps":-1})") ==
          "steps");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"regular","steps":1,"stop_gap":0})") ==
          "stop_gap");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"regular","steps":1,"polarization":{"bins":0}})") ==
          "polarization.bins");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"regular","steps":1,"polarization":{"alpha":-1}})") ==
          "polarization.alpha");
    CHECK(field_of(
              R"({"n":2,"beliefs":{"kind":"uniform"},"influence":{"kind":"clique","c":0.5},"update":"regular","steps":1,"polarization":{"k":0}})") ==
          "polarization.k");
}

TEST_CASE("doubles render as shortest round-trip strings") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("belief csv bytes are exact") {
    const Scenario s = parse_scenario(R"({
      "n": 2,
      "beliefs": {"kind": "explicit", "values": [0, 1]},
      "influence": {"kind": "clique", "c": 1.0},
      "update": "regular",
      "steps": 1
    })");
    const SimulationTrace trace = simulate_scenario(s);
    CHECK(beliefs_csv_text(trace) == "t,b0,b1\n0,0,1\n1,0.5,0.5\n");

    // Two regular steps on a 3-agent 0.5-clique from the uniform layout,
    // every value an exact dyadic.
    Scenario three = parse_scenario(kMinimalScenario);
    three.steps = 2;
    CHECK(beliefs_csv_text(simulate_scenario(three)) ==
          "t,b0,b1,b2\n0,0,0.5,1\n1,0.25,0.5,0.75\n2,0.375,0.5,0.625\n");

    // A zero-step budget still records the initial state.
    three.steps = 0;
    CHECK(beliefs_csv_text(simulate_scenario(three)) == "t,b0,b1,b2\n0,0,0.5,1\n");
}

TEST_CASE("polarization csv bytes are exact") {
    CHECK(polarization_csv_text({131.5, 0.0}) == "t,rho\n0,131.5\n1,0\n");
}

TEST_CASE("svg artifacts have the fixed viewport and one polyline per curve") {
    const Scenario s = parse_scenario(kMinimalScenario);
    const SimulationTrace trace = simulate_scenario(s);
    const std::string svg = beliefs_svg_text(trace);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\"") !=
          std::string::npos);
    size_t polylines = 0;
    for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1))
        ++polylines;
    CHECK(polylines == 3);

    const std::string rho_svg = polarization_svg_text({1.0, 0.5, 0.0});
    CHECK(rho_svg.find("width=\"800\" height=\"500\"") != std::string::npos);
    CHECK(rho_svg.find("<polyline") != std::string::npos);
}

TEST_CASE("analysis json carries the report, prediction, limits and bound") {
    const Scenario s = parse_scenario(kMinimalScenario);
    const SimulationTrace trace = simulate_scenario(s);
    const nlohmann::json j = nlohmann::json::parse(analysis_json_text(s, trace));

    CHECK(j["graph"]["strongly_connected"] == true);
    CHECK(j["graph"]["balanced"] == true);
    CHECK(j["graph"]["clique_constant"] == 0.5);
    CHECK(j["predicted_consensus"] == 0.5);
    CHECK(j["limit"]["consensus"] == true);
    CHECK(j["limit"]["converged"] == true);
    CHECK(j["convergence_bound"]["c"] == 0.5);
    CHECK(j["convergence_bound"]["eps_target"] == 0.01);
    CHECK(j["trace"]["steps_taken"] == 10);

    // Non-clique scenarios carry no clique bound.
    const Scenario circ = parse_scenario(R"({
      "n": 4,
      "beliefs": {"kind": "mild"},
      "influence": {"kind": "circular", "c": 0.5},
      "update": "regular",
      "steps": 5
    })");
    const nlohmann::json jc =
        nlohmann::json::parse(analysis_json_text(circ, simulate_scenario(circ)));
    CHECK(jc["convergence_bound"].is_null());
    CHECK(jc["graph"]["clique_constant"].is_null());
}

TEST_CASE("run_scenario writes deterministic artifacts") {
    const Scenario s = parse_scenario(kMinimalScenario);
    const fs::path dir1 = fresh_dir("run_a");
    const fs::path dir2 = fresh_dir("run_b");
    const RunManifest m1 = run_scenario(s, dir1);
    const RunManifest m2 = run_scenario(s, dir2);

    for (const fs::path& p : {m1.beliefs_csv, m1.polarization_csv, m1.analysis_json,
                              m1.beliefs_svg, m1.polarization_svg}) {
        CHECK(fs::exists(p));
        CHECK(fs::file_size(p) > 0);
    }
    CHECK(slurp(m1.beliefs_csv) == slurp(m2.beliefs_csv));
    CHECK(slurp(m1.polarization_csv) == slurp(m2.polarization_csv));
    CHECK(slurp(m1.analysis_json) == slurp(m2.analysis_json));
    CHECK(slurp(m1.beliefs_svg) == slurp(m2.beliefs_svg));
    CHECK(slurp(m1.polarization_svg) == slurp(m2.polarization_svg));

    // Rerunning into the same directory is also byte-stable and leaves no
    // temp droppings behind.
    const std::string before = slurp(m1.beliefs_csv);
    run_scenario(s, dir1);
    CHECK(slurp(m1.beliefs_csv) == before);
    for (const auto& entry : fs::directory_iterator(dir1))
        CHECK(entry.path().extension() != ".tmp");

    const nlohmann::json manifest = nlohmann::json::parse(m1.to_json());
    CHECK(manifest["beliefs_csv"] == m1.beliefs_csv.string());
}

TEST_CASE("checks pass on lawful scenarios") {
    const Scenario s = parse_scenario(kMinimalScenario);
    const std::vector<CheckReport> reports = run_checks(s);
    CHECK(reports.size() >= 4);  // bounds, order, gap decay, conservation, path
    for (const CheckReport& r : reports) {
        INFO(r.name);
        CHECK(r.passed);
    }
}

TEST_CASE("sweep runs the grid and writes a summary") {
    Scenario s = parse_scenario(kMinimalScenario);
    s.stop_gap = 1e-2;
    const fs::path dir = fresh_dir("sweep");
    const std::vector<SweepCell> cells = run_sweep(s, {0.2, 0.8}, {5, 50}, dir);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].c == 0.2);
    CHECK(cells[0].steps == 5);
    CHECK(cells[3].c == 0.8);
    CHECK(cells[3].steps == 50);
    for (const SweepCell& cell : cells) {
        CHECK(fs::exists(cell.dir / "beliefs.csv"));
        CHECK(fs::exists(cell.dir / "analysis.json"));
        CHECK(cell.steps_taken <= cell.steps);
    }
    CHECK(fs::exists(dir / "sweep.csv"));
    const std::string summary = slurp(dir / "sweep.csv");
    CHECK(summary.rfind("c,steps,steps_taken,stop_reason,final_gap,final_rho,dir\n", 0) == 0);

    // Sweeps need a c-parameterized influence family.
    Scenario bad = s;
    bad.influence.kind = GraphKind::Faint;
    CHECK_THROWS_AS(run_sweep(bad, {0.5}, {5}, fresh_dir("sweep_bad")), ScenarioError);
}

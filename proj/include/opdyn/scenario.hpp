#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opdyn/analysis.hpp"
#include "opdyn/core.hpp"
#include "opdyn/graphs.hpp"
#include "opdyn/polarization.hpp"
#include "opdyn/verify.hpp"

// Scenario files: a JSON description of one simulation (agents, initial
// beliefs, influence graph, update rule, step budget, polarization
// parameters) plus the pipeline that runs it and writes CSV/JSON/SVG
// artifacts. All artifact bytes are deterministic: shortest round-trip
// number formatting, '\n' line endings, no locale, atomic writes.
namespace opdyn {

// Malformed or inconsistent scenario content. `field` is the JSON path of
// the offending entry, e.g. "influence.c".
class ScenarioError : public std::runtime_error {
  public:
    ScenarioError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// Filesystem failure while reading scenarios or writing artifacts.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BeliefSpec {
    std::optional<BeliefConfig> kind;          // generated layout ...
    std::optional<std::vector<double>> values; // ... or explicit values
};

struct InfluenceSpec {
    std::optional<GraphKind> kind;             // generated family ...
    double c = 0.5;                            // weight for clique/circular
    std::optional<std::vector<double>> weights;// ... or explicit row-major matrix
};

struct PolarizationSpec {
    int bins = kDefaultBins;
    double alpha = kDefaultAlpha;
    double scale = kDefaultScale;  // JSON key "k"
};

struct Scenario {
    int n = 0;
    BeliefSpec beliefs;
    InfluenceSpec influence;
    UpdateKind update = UpdateKind::Regular;
    int steps = 0;
    std::optional<double> stop_gap;
    PolarizationSpec polarization;
};

// Paths of the artifacts one run produced.
struct RunManifest {
    std::filesystem::path beliefs_csv;
    std::filesystem::path polarization_csv;
    std::filesystem::path analysis_json;
    std::filesystem::path beliefs_svg;
    std::filesystem::path polarization_svg;

    std::string to_json() const;
};

// One grid point of a sweep and where its artifacts went.
struct SweepCell {
    double c = 0.0;
    int steps = 0;
    int steps_taken = 0;
    StopReason stop_reason = StopReason::MaxSteps;
    double final_gap = 0.0;
    double final_rho = 0.0;
    std::filesystem::path dir;
};

Scenario parse_scenario(const std::string& json_text);   // throws ScenarioError
Scenario load_scenario(const std::filesystem::path& file);  // throws IoError / ScenarioError

// Materialize the scenario's pieces. Throw ScenarioError on inconsistencies
// (e.g. explicit values whose length contradicts n).
BeliefState scenario_beliefs(const Scenario& s);
InfluenceGraph scenario_influence(const Scenario& s);
SimulationTrace simulate_scenario(const Scenario& s);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Artifact bodies, exposed so tests can compare bytes without touching disk.
std::string beliefs_csv_text(const SimulationTrace& trace);
std::string polarization_csv_text(const std::vector<double>& series);
std::string analysis_json_text(const Scenario& s, const SimulationTrace& trace);
std::string beliefs_svg_text(const SimulationTrace& trace);
std::string polarization_svg_text(const std::vector<double>& series);

// Write-to-temp-then-rename; throws IoError.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// Simulate and write all artifacts under out_dir (created if missing).
RunManifest run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

// Every checker whose preconditions the scenario satisfies, in a fixed order.
std::vector<CheckReport> run_checks(const Scenario& s);

// Cross product of c_grid x steps_grid, each cell run as an independent
// scenario into its own subdirectory (cells run in parallel), plus a
// sweep.csv summary. The scenario's influence kind must take a c parameter.
std::vector<SweepCell> run_sweep(const Scenario& s, const std::vector<double>& c_grid,
                                 const std::vector<int>& steps_grid,
                                 const std::filesystem::path& out_dir);

}  // namespace opdyn

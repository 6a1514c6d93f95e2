#include "opdyn/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>

#include "json.hpp"

namespace opdyn {

namespace {

using nlohmann::json;

const json& require_field(const json& obj, const std::string& parent, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ScenarioError(parent.empty() ? key : parent + "." + key, "missing required field");
    return *it;
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ScenarioError(path, "expected an integer");
    return v.get<int>();
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path, "expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ScenarioError(path, "expected a string");
    return v.get<std::string>();
}

const json& as_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw ScenarioError(path, "expected an object");
    return v;
}

BeliefConfig parse_belief_kind(const std::string& s, const std::string& path) {
    if (s == "uniform") return BeliefConfig::Uniform;
    if (s == "mild") return BeliefConfig::Mild;
    if (s == "extreme") return BeliefConfig::Extreme;
    if (s == "tripolar") return BeliefConfig::Tripolar;
    throw ScenarioError(path, "unknown belief kind '" + s + "'");
}

GraphKind parse_graph_kind(const std::string& s, const std::string& path) {
    if (s == "clique") return GraphKind::Clique;
    if (s == "circular") return GraphKind::Circular;
    if (s == "disconnected") return GraphKind::Disconnected;
    if (s == "unrelenting") return GraphKind::Unrelenting;
    if (s == "faint") return GraphKind::Faint;
    throw ScenarioError(path, "unknown influence kind '" + s + "'");
}

void parse_beliefs(const json& node, Scenario& s) {
    const json& obj = as_object(node, "beliefs");
    const std::string kind = as_string(require_field(obj, "beliefs", "kind"), "beliefs.kind");
    if (kind == "explicit") {
        const json& vals = require_field(obj, "beliefs", "values");
        if (!vals.is_array()) throw ScenarioError("beliefs.values", "expected an array");
        std::vector<double> values;
        for (size_t i = 0; i < vals.size(); ++i) {
            const double v = as_double(vals[i], "beliefs.values[" + std::to_string(i) + "]");
            if (!(v >= 0.0 && v <= 1.0))
                throw ScenarioError("beliefs.values[" + std::to_string(i) + "]",
                                    "belief must lie in [0,1]");
            values.push_back(v);
        }
        if (static_cast<int>(values.size()) != s.n)
            throw ScenarioError("beliefs.values", "expected exactly n values");
        s.beliefs.values = std::move(values);
    } else {
        if (obj.contains("values"))
            throw ScenarioError("beliefs.values", "only allowed with kind 'explicit'");
        s.beliefs.kind = parse_belief_kind(kind, "beliefs.kind");
        if (*s.beliefs.kind == BeliefConfig::Tripolar && s.n < 3)
            throw ScenarioError("beliefs.kind", "tripolar needs n >= 3");
    }
}

void parse_influence(const json& node, Scenario& s) {
    const json& obj = as_object(node, "influence");
    const std::string kind = as_string(require_field(obj, "influence", "kind"), "influence.kind");
    if (kind == "explicit") {
        const json& rows = require_field(obj, "influence", "weights");
        if (!rows.is_array() || static_cast<int>(rows.size()) != s.n)
            throw ScenarioError("influence.weights", "expected n rows");
        std::vector<double> w;
        for (size_t i = 0; i < rows.size(); ++i) {
            const std::string row_path = "influence.weights[" + std::to_string(i) + "]";
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != s.n)
                throw ScenarioError(row_path, "expected n entries");
            for (size_t j = 0; j < rows[i].size(); ++j) {
                const std::string cell = row_path + "[" + std::to_string(j) + "]";
                const double v = as_double(rows[i][j], cell);
                if (!(v >= 0.0 && v <= 1.0)) throw ScenarioError(cell, "weight must lie in [0,1]");
                if (i == j && v != 0.0) throw ScenarioError(cell, "diagonal must be zero");
                w.push_back(v);
            }
        }
        s.influence.weights = std::move(w);
    } else {
        if (obj.contains("weights"))
            throw ScenarioError("influence.weights", "only allowed with kind 'explicit'");
        s.influence.kind = parse_graph_kind(kind, "influence.kind");
        if (obj.contains("c")) {
            s.influence.c = as_double(obj["c"], "influence.c");
            if (!(s.influence.c > 0.0 && s.influence.c <= 1.0))
                throw ScenarioError("influence.c", "must lie in (0,1]");
        }
        if (*s.influence.kind == GraphKind::Unrelenting && s.n < 3)
            throw ScenarioError("influence.kind", "unrelenting needs n >= 3");
    }
}

void parse_polarization(const json& node, Scenario& s) {
    const json& obj = as_object(node, "polarization");
    if (obj.contains("bins")) {
        s.polarization.bins = as_int(obj["bins"], "polarization.bins");
        if (s.polarization.bins < 1) throw ScenarioError("polarization.bins", "must be at least 1");
    }
    if (obj.contains("alpha")) {
        s.polarization.alpha = as_double(obj["alpha"], "polarization.alpha");
        if (!(s.polarization.alpha > 0.0))
            throw ScenarioError("polarization.alpha", "must be positive");
    }
    if (obj.contains("k")) {
        s.polarization.scale = as_double(obj["k"], "polarization.k");
        if (!(s.polarization.scale > 0.0)) throw ScenarioError("polarization.k", "must be positive");
    }
}

// ---------------------------------------------------------------------------
// SVG rendering: fixed 800x500 viewport, linear axes, one polyline per curve.

constexpr int kSvgW = 800;
constexpr int kSvgH = 500;
constexpr int kSvgLeft = 60;
constexpr int kSvgRight = 15;
constexpr int kSvgTop = 15;
constexpr int kSvgBottom = 45;

double svg_x(double t, double t_max) {
    return kSvgLeft + (kSvgW - kSvgLeft - kSvgRight) * (t_max > 0.0 ? t / t_max : 0.0);
}

double svg_y(double v, double v_max) {
    const double unit = v_max > 0.0 ? v / v_max : 0.0;
    return (kSvgH - kSvgBottom) - (kSvgH - kSvgTop - kSvgBottom) * unit;
}

void svg_header(std::string& out) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
}

void svg_axes(std::string& out, const std::string& y_max_label, const std::string& t_max_label) {
    std::string x0 = format_double(kSvgLeft);
    std::string y0 = format_double(kSvgH - kSvgBottom);
    std::string x1 = format_double(kSvgW - kSvgRight);
    std::string y1 = format_double(kSvgTop);
    out += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + x0 + "\" y=\"" + format_double(kSvgH - kSvgBottom + 16) +
           "\" font-family=\"monospace\" font-size=\"12\">0</text>\n";
    out += "<text x=\"" + x1 + "\" y=\"" + format_double(kSvgH - kSvgBottom + 16) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" + t_max_label +
           "</text>\n";
    out += "<text x=\"" + format_double(kSvgLeft - 6) + "\" y=\"" + y0 +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">0</text>\n";
    out += "<text x=\"" + format_double(kSvgLeft - 6) + "\" y=\"" + format_double(kSvgTop + 10) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" + y_max_label +
           "</text>\n";
}

void svg_polyline(std::string& out, const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& stroke) {
    out += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += format_double(xs[i]);
        out += ',';
        out += format_double(ys[i]);
    }
    out += "\"/>\n";
}

BinSpec scenario_bins(const Scenario& s) { return BinSpec::uniform(s.polarization.bins); }

ErParams scenario_er(const Scenario& s) { return ErParams{s.polarization.scale, s.polarization.alpha}; }

json graph_report_json(const GraphClassReport& report) {
    json j;
    j["strongly_connected"] = report.strongly_connected;
    j["weakly_connected"] = report.weakly_connected;
    j["balanced"] = report.balanced;
    j["clique_constant"] = report.clique_constant ? json(*report.clique_constant) : json(nullptr);
    j["min_positive_influence"] =
        report.min_positive_influence ? json(*report.min_positive_influence) : json(nullptr);
    return j;
}

struct ScenarioRun {
    SimulationTrace trace;
    std::vector<double> series;
};

ScenarioRun execute(const Scenario& s) {
    ScenarioRun r;
    r.trace = simulate_scenario(s);
    r.series = polarization_series(r.trace, scenario_bins(s), scenario_er(s));
    return r;
}

RunManifest write_artifacts(const Scenario& s, const ScenarioRun& r,
                            const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    if (!std::filesystem::is_directory(out_dir))
        throw IoError("output path is not a directory: " + out_dir.string());

    RunManifest m;
    m.beliefs_csv = out_dir / "beliefs.csv";
    m.polarization_csv = out_dir / "polarization.csv";
    m.analysis_json = out_dir / "analysis.json";
    m.beliefs_svg = out_dir / "beliefs.svg";
    m.polarization_svg = out_dir / "polarization.svg";
    atomic_write_file(m.beliefs_csv, beliefs_csv_text(r.trace));
    atomic_write_file(m.polarization_csv, polarization_csv_text(r.series));
    atomic_write_file(m.analysis_json, analysis_json_text(s, r.trace));
    atomic_write_file(m.beliefs_svg, beliefs_svg_text(r.trace));
    atomic_write_file(m.polarization_svg, polarization_svg_text(r.series));
    return m;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    const json root = json::parse(json_text, nullptr, false);
    if (root.is_discarded()) throw ScenarioError("(root)", "invalid JSON");
    if (!root.is_object()) throw ScenarioError("(root)", "expected a JSON object");

    Scenario s;
    s.n = as_int(require_field(root, "", "n"), "n");
    if (s.n < 1) throw ScenarioError("n", "must be at least 1");

    parse_beliefs(require_field(root, "", "beliefs"), s);
    parse_influence(require_field(root, "", "influence"), s);

    const std::string update = as_string(require_field(root, "", "update"), "update");
    if (update == "regular")
        s.update = UpdateKind::Regular;
    else if (update == "confirmation_bias")
        s.update = UpdateKind::ConfirmationBias;
    else
        throw ScenarioError("update", "unknown update kind '" + update + "'");

    s.steps = as_int(require_field(root, "", "steps"), "steps");
    if (s.steps < 0) throw ScenarioError("steps", "must be non-negative");

    if (root.contains("stop_gap")) {
        s.stop_gap = as_double(root["stop_gap"], "stop_gap");
        if (!(*s.stop_gap > 0.0)) throw ScenarioError("stop_gap", "must be positive");
    }
    if (root.contains("polarization")) parse_polarization(root["polarization"], s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read scenario file " + file.string());
    return parse_scenario(buf.str());
}

BeliefState scenario_beliefs(const Scenario& s) {
    if (s.beliefs.values) return BeliefState(*s.beliefs.values);
    return gen_initial_beliefs(*s.beliefs.kind, s.n);
}

InfluenceGraph scenario_influence(const Scenario& s) {
    if (s.influence.weights) return InfluenceGraph(s.n, *s.influence.weights);
    return gen_influence(*s.influence.kind, s.n, s.influence.c);
}

SimulationTrace simulate_scenario(const Scenario& s) {
    return run(scenario_beliefs(s), scenario_influence(s), s.update, s.steps, s.stop_gap);
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string beliefs_csv_text(const SimulationTrace& trace) {
    std::string out = "t";
    const int n = trace.states.front().size();
    for (int i = 0; i < n; ++i) out += ",b" + std::to_string(i);
    out += '\n';
    for (size_t t = 0; t < trace.states.size(); ++t) {
        out += std::to_string(t);
        for (int i = 0; i < n; ++i) {
            out += ',';
            out += format_double(trace.states[t][i]);
        }
        out += '\n';
    }
    return out;
}

std::string polarization_csv_text(const std::vector<double>& series) {
    std::string out = "t,rho\n";
    for (size_t t = 0; t < series.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(series[t]);
        out += '\n';
    }
    return out;
}

std::string analysis_json_text(const Scenario& s, const SimulationTrace& trace) {
    const InfluenceGraph g = scenario_influence(s);
    const GraphClassReport report = classify(g);
    const BeliefState& b0 = trace.initial();

    json j;
    j["graph"] = graph_report_json(report);

    const std::optional<double> consensus = predict_consensus(g, b0);
    j["predicted_consensus"] = consensus ? json(*consensus) : json(nullptr);

    const LimitReport limit = limit_beliefs(g, b0);
    j["limit"] = {{"limits", limit.limits},
                  {"iterations", limit.iterations},
                  {"residual", limit.residual},
                  {"converged", limit.converged},
                  {"consensus", limit.consensus}};

    if (report.clique_constant) {
        const double eps = s.stop_gap.value_or(1e-2);
        ConvergenceBound bound = clique_convergence_bound(*report.clique_constant, b0, eps);
        bound.epsilon_contraction = contraction_epsilon(g, extremes(trace));
        if (s.update == UpdateKind::ConfirmationBias) bound.f_min = min_cb_factor(b0);
        json bj;
        bj["t_eps"] = bound.t_eps;
        bj["c"] = bound.c;
        bj["eps_target"] = bound.eps_target;
        bj["epsilon_contraction"] =
            bound.epsilon_contraction ? json(*bound.epsilon_contraction) : json(nullptr);
        bj["f_min"] = bound.f_min ? json(*bound.f_min) : json(nullptr);
        j["convergence_bound"] = bj;
    } else {
        j["convergence_bound"] = nullptr;
    }

    j["trace"] = {{"steps_taken", trace.steps_taken},
                  {"stop_reason", to_string(trace.stop_reason)},
                  {"final_gap", trace.final_state().gap()}};
    return j.dump(2) + "\n";
}

std::string beliefs_svg_text(const SimulationTrace& trace) {
    const int n = trace.states.front().size();
    const double t_max = static_cast<double>(trace.states.size() - 1);
    std::string out;
    svg_header(out);
    svg_axes(out, "1", format_double(t_max));
    std::vector<double> xs(trace.states.size()), ys(trace.states.size());
    for (int i = 0; i < n; ++i) {
        for (size_t t = 0; t < trace.states.size(); ++t) {
            xs[t] = svg_x(static_cast<double>(t), t_max);
            ys[t] = svg_y(trace.states[t][i], 1.0);
        }
        const int hue = n > 0 ? (i * 360) / n : 0;
        svg_polyline(out, xs, ys, "hsl(" + std::to_string(hue) + ",65%,40%)");
    }
    out += "</svg>\n";
    return out;
}

std::string polarization_svg_text(const std::vector<double>& series) {
    const double t_max = static_cast<double>(series.size() - 1);
    double v_max = 0.0;
    for (double v : series) v_max = std::max(v_max, v);
    if (v_max <= 0.0) v_max = 1.0;  // flat, all-zero series still gets an axis
    std::string out;
    svg_header(out);
    svg_axes(out, format_double(v_max), format_double(t_max));
    std::vector<double> xs(series.size()), ys(series.size());
    for (size_t t = 0; t < series.size(); ++t) {
        xs[t] = svg_x(static_cast<double>(t), t_max);
        ys[t] = svg_y(series[t], v_max);
    }
    svg_polyline(out, xs, ys, "hsl(10,65%,40%)");
    out += "</svg>\n";
    return out;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string RunManifest::to_json() const {
    json j;
    j["beliefs_csv"] = beliefs_csv.string();
    j["polarization_csv"] = polarization_csv.string();
    j["analysis_json"] = analysis_json.string();
    j["beliefs_svg"] = beliefs_svg.string();
    j["polarization_svg"] = polarization_svg.string();
    return j.dump(2) + "\n";
}

RunManifest run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
    return write_artifacts(s, execute(s), out_dir);
}

std::vector<CheckReport> run_checks(const Scenario& s) {
    const SimulationTrace trace = simulate_scenario(s);
    const InfluenceGraph g = scenario_influence(s);
    const GraphClassReport report = classify(g);

    std::vector<CheckReport> out;
    if (trace.states.size() >= 2) out.push_back(check_belief_bounds(trace));
    if (report.clique_constant && trace.states.size() >= 2) {
        out.push_back(check_order_preservation(trace, report));
        if (s.update == UpdateKind::Regular)
            out.push_back(check_geometric_gap(trace, *report.clique_constant));
    }
    if (report.balanced && s.update == UpdateKind::Regular)
        out.push_back(check_conservation(trace, report));

    const BeliefState& b0 = trace.initial();
    bool all_extreme = true;
    for (int i = 0; i < b0.size(); ++i)
        if (b0[i] != 0.0 && b0[i] != 1.0) all_extreme = false;
    if (all_extreme) out.push_back(check_cb_fixedpoint(b0, g));

    // Sample one influence path for the reach/decay check: breadth-first from
    // the initially lowest agent to the farthest node it reaches.
    if (report.strongly_connected && g.size() >= 2) {
        int source = 0;
        for (int i = 1; i < b0.size(); ++i)
            if (b0[i] < b0[source]) source = i;
        std::vector<int> parent(static_cast<size_t>(g.size()), -1);
        std::vector<int> order{source};
        parent[static_cast<size_t>(source)] = source;
        for (size_t head = 0; head < order.size(); ++head) {
            const int v = order[head];
            for (int u = 0; u < g.size(); ++u) {
                if (g.weight(v, u) > 0.0 && parent[static_cast<size_t>(u)] == -1) {
                    parent[static_cast<size_t>(u)] = v;
                    order.push_back(u);
                }
            }
        }
        std::vector<int> path;
        for (int v = order.back(); v != source; v = parent[static_cast<size_t>(v)])
            path.push_back(v);
        path.push_back(source);
        std::reverse(path.begin(), path.end());
        if (path.size() >= 2 &&
            trace.states.size() >= path.size() + 1ul + static_cast<size_t>(0) + 1ul)
            out.push_back(check_path_bound(trace, g, path, 0));
    }
    return out;
}

std::vector<SweepCell> run_sweep(const Scenario& s, const std::vector<double>& c_grid,
                                 const std::vector<int>& steps_grid,
                                 const std::filesystem::path& out_dir) {
    if (!s.influence.kind ||
        (*s.influence.kind != GraphKind::Clique && *s.influence.kind != GraphKind::Circular))
        throw ScenarioError("influence.kind", "sweep needs a c-parameterized family (clique or circular)");
    if (c_grid.empty()) throw ScenarioError("c_grid", "sweep needs at least one c value");
    if (steps_grid.empty()) throw ScenarioError("steps_grid", "sweep needs at least one steps value");
    for (double c : c_grid)
        if (!(c > 0.0 && c <= 1.0)) throw ScenarioError("c_grid", "c values must lie in (0,1]");
    for (int st : steps_grid)
        if (st < 0) throw ScenarioError("steps_grid", "steps values must be non-negative");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::vector<SweepCell> cells(c_grid.size() * steps_grid.size());
    std::vector<std::exception_ptr> errors(cells.size());
    const int total = static_cast<int>(cells.size());

    // Grid points are independent runs writing to disjoint directories.
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < total; ++idx) {
        try {
            const double c = c_grid[static_cast<size_t>(idx) / steps_grid.size()];
            const int st = steps_grid[static_cast<size_t>(idx) % steps_grid.size()];
            Scenario cell_scenario = s;
            cell_scenario.influence.c = c;
            cell_scenario.steps = st;

            SweepCell& cell = cells[static_cast<size_t>(idx)];
            cell.c = c;
            cell.steps = st;
            cell.dir = out_dir / ("c" + format_double(c) + "_steps" + std::to_string(st));

            const ScenarioRun r = execute(cell_scenario);
            write_artifacts(cell_scenario, r, cell.dir);
            cell.steps_taken = r.trace.steps_taken;
            cell.stop_reason = r.trace.stop_reason;
            cell.final_gap = r.trace.final_state().gap();
            cell.final_rho = r.series.back();
        } catch (...) {
            errors[static_cast<size_t>(idx)] = std::current_exception();
        }
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    std::string csv = "c,steps,steps_taken,stop_reason,final_gap,final_rho,dir\n";
    for (const SweepCell& cell : cells) {
        csv += format_double(cell.c);
        csv += ',' + std::to_string(cell.steps);
        csv += ',' + std::to_string(cell.steps_taken);
        csv += ',';
        csv += to_string(cell.stop_reason);
        csv += ',';
        csv += format_double(cell.final_gap);
        csv += ',';
        csv += format_double(cell.final_rho);
        csv += ',';
        csv += cell.dir.filename().string();
        csv += '\n';
    }
    atomic_write_file(out_dir / "sweep.csv", csv);
    return cells;
}

}  // namespace opdyn

#include "opdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace opdyn {

ExtremeSeries extremes(const SimulationTrace& trace) {
    ExtremeSeries ex;
    for (const BeliefState& state : trace.states) {
        int amax = 0, amin = 0;
        for (int i = 1; i < state.size(); ++i) {
            if (state[i] > state[amax]) amax = i;  // strict: ties keep the lowest index
            if (state[i] < state[amin]) amin = i;
        }
        ex.max_t.push_back(state[amax]);
        ex.min_t.push_back(state[amin]);
        ex.argmax_t.push_back(amax);
        ex.argmin_t.push_back(amin);
    }
    ex.u_est = ex.max_t.back();
    ex.l_est = ex.min_t.back();
    return ex;
}

ConvergenceBound clique_convergence_bound(double c, const BeliefState& b0, double eps) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("clique constant must lie in (0,1]");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

    ConvergenceBound bound;
    bound.c = c;
    bound.eps_target = eps;
    const double gap0 = b0.gap();
    if (gap0 <= 0.0)
        bound.t_eps = 0.0;  // already at consensus
    else if (c == 1.0)
        bound.t_eps = 1.0;  // spread collapses in one step
    else
        bound.t_eps = std::max(0.0, std::log(eps / gap0) / std::log(1.0 - c));
    return bound;
}

std::optional<double> contraction_epsilon(const InfluenceGraph& g, const ExtremeSeries& ex) {
    const GraphClassReport report = classify(g);
    if (!report.min_positive_influence) return std::nullopt;
    const int n = g.size();
    return std::pow(*report.min_positive_influence / n, n - 1) * (ex.u_est - ex.l_est);
}

double min_cb_factor(const BeliefState& b) { return 1.0 - b.gap(); }

std::optional<double> predict_consensus(const InfluenceGraph& g, const BeliefState& b0) {
    if (g.size() != b0.size())
        throw std::invalid_argument("belief state and influence graph sizes differ");
    const GraphClassReport report = classify(g);
    if (report.balanced && report.weakly_connected) return b0.mean();
    return std::nullopt;
}

SccDecomposition scc_condense(const InfluenceGraph& g) {
    SccDecomposition d;
    d.components = strongly_connected_components(g);

    const int n = g.size();
    std::vector<int> comp_of(static_cast<size_t>(n), 0);
    for (size_t ci = 0; ci < d.components.size(); ++ci)
        for (int agent : d.components[ci]) comp_of[static_cast<size_t>(agent)] = static_cast<int>(ci);

    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.weight(i, j) > 0.0 && comp_of[static_cast<size_t>(i)] != comp_of[static_cast<size_t>(j)])
                edges.emplace(comp_of[static_cast<size_t>(i)], comp_of[static_cast<size_t>(j)]);
    d.condensation_edges.assign(edges.begin(), edges.end());

    std::vector<int> indegree(d.components.size(), 0);
    for (const auto& [from, to] : d.condensation_edges) indegree[static_cast<size_t>(to)]++;
    for (size_t ci = 0; ci < d.components.size(); ++ci)
        if (indegree[ci] == 0) d.source_components.push_back(static_cast<int>(ci));
    return d;
}

UpdateMatrix build_update_matrix(const InfluenceGraph& g) {
    const int n = g.size();
    UpdateMatrix m;
    m.n = n;
    m.m.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int i = 0; i < n; ++i) {
        double incoming = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = g.weight(j, i);
            incoming += w;
            m.m[static_cast<size_t>(i) * n + j] = w / n;
        }
        m.m[static_cast<size_t>(i) * n + i] = 1.0 - incoming / n;
    }
    return m;
}

std::vector<double> apply_update_matrix(const UpdateMatrix& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.n)
        throw std::invalid_argument("vector length and update matrix size differ");
    const int n = m.n;
    std::vector<double> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += m.at(i, j) * x[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

LimitReport limit_beliefs(const InfluenceGraph& g, const BeliefState& b0, double tol,
                          int max_iter) {
    if (g.size() != b0.size())
        throw std::invalid_argument("belief state and influence graph sizes differ");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    const int n = g.size();
    const UpdateMatrix m = build_update_matrix(g);
    LimitReport report;
    report.limits = b0.values();
    // Power iteration; every diagonal entry of m is at least 1/n, so the
    // chain is aperiodic and the per-step change decays geometrically.
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> next = apply_update_matrix(m, report.limits);
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            next[static_cast<size_t>(i)] = std::clamp(next[static_cast<size_t>(i)], 0.0, 1.0);
            residual = std::max(residual,
                                std::fabs(next[static_cast<size_t>(i)] - report.limits[static_cast<size_t>(i)]));
        }
        report.limits = std::move(next);
        report.iterations = it;
        report.residual = residual;
        if (residual < tol) {
            report.converged = true;
            break;
        }
    }
    const auto [lo, hi] = std::minmax_element(report.limits.begin(), report.limits.end());
    report.consensus = (*hi - *lo) <= n * tol;
    return report;
}

}  // namespace opdyn

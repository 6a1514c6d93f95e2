#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opdyn/core.hpp"
#include "opdyn/graphs.hpp"

// Convergence analysis: per-step extremes, closed-form convergence bounds
// for uniform cliques, consensus prediction, the equivalent row-stochastic
// update matrix, its component structure, and long-run limits by power
// iteration.
namespace opdyn {

// Per-step extreme beliefs of a trace, with lowest-index tie-breaks, plus
// the final-state extremes as estimates of the limiting band.
struct ExtremeSeries {
    std::vector<double> max_t;
    std::vector<double> min_t;
    std::vector<int> argmax_t;
    std::vector<int> argmin_t;
    double u_est = 0.0;  // final max
    double l_est = 0.0;  // final min
};

// Steps guaranteed to shrink the belief spread of a c-clique below
// eps_target: spread decays by (1-c) per step, so past t_eps every state is
// within eps_target. The two optional diagnostics are filled in after a run
// (they need observed extremes / the initial state) and carry no guarantee.
struct ConvergenceBound {
    double t_eps = 0.0;
    double c = 0.0;
    double eps_target = 0.0;
    std::optional<double> epsilon_contraction;  // (min_w/n)^(n-1) * (u_est - l_est)
    std::optional<double> f_min;                // smallest initial bias factor (CB runs)
};

// Row-stochastic matrix m with m[i][j] the effective pull of agent j's
// belief on agent i's next value; applying it reproduces the regular step.
struct UpdateMatrix {
    int n = 0;
    std::vector<double> m;  // row-major n*n

    double at(int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }
};

// Strongly connected components plus the acyclic component-level graph they
// induce. Components are sorted ascending and ordered by smallest member;
// edges connect component indices; sources have no incoming edge.
struct SccDecomposition {
    std::vector<std::vector<int>> components;
    std::vector<std::pair<int, int>> condensation_edges;  // (from, to), deduplicated, sorted
    std::vector<int> source_components;
};

// Result of power iteration on the update matrix: the limiting beliefs, how
// many applications were needed, the final per-agent change, whether that
// change dropped below the requested tolerance, and whether the limits are
// mutually within n*tol (consensus).
struct LimitReport {
    std::vector<double> limits;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    bool consensus = false;
};

ExtremeSeries extremes(const SimulationTrace& trace);

// Closed-form bound for a uniform c-clique starting from b0. eps must be
// positive and c in (0,1]; a zero initial spread yields a zero bound, and
// c == 1 converges in a single step.
ConvergenceBound clique_convergence_bound(double c, const BeliefState& b0, double eps);

// Diagnostic contraction margin from a finished run: the worst-case n-step
// pull toward the interior, (min_w/n)^(n-1) * (u_est - l_est). Empty when
// the graph has no positive weight.
std::optional<double> contraction_epsilon(const InfluenceGraph& g, const ExtremeSeries& ex);

// Smallest confirmation-bias factor in a state: 1 - (max - min).
double min_cb_factor(const BeliefState& b);

// The exact limit mean(b0) when the graph provably mixes the initial mass
// evenly (balanced and weakly connected); empty otherwise.
std::optional<double> predict_consensus(const InfluenceGraph& g, const BeliefState& b0);

SccDecomposition scc_condense(const InfluenceGraph& g);

UpdateMatrix build_update_matrix(const InfluenceGraph& g);

// One matrix application (row dot products, ascending index).
std::vector<double> apply_update_matrix(const UpdateMatrix& m, const std::vector<double>& x);

// Iterate the update matrix from b0 until the max per-agent change drops
// below tol or max_iter applications are spent. Non-convergence is reported,
// not thrown. tol must be positive, max_iter at least 1.
LimitReport limit_beliefs(const InfluenceGraph& g, const BeliefState& b0, double tol = 1e-12,
                          int max_iter = 200000);

}  // namespace opdyn

#include "opdyn/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace opdyn {

namespace {

CheckReport pass(const char* name) { return CheckReport{name, true, std::nullopt}; }

CheckReport fail(const char* name, int t, int agent, double lhs, double rhs, double slack) {
    return CheckReport{name, false, CheckViolation{t, agent, lhs, rhs, slack}};
}

void require_states(const SimulationTrace& trace, size_t needed, const char* who) {
    if (trace.states.size() < needed)
        throw std::invalid_argument(std::string(who) + ": trace has too few states");
}

}  // namespace

CheckReport check_belief_bounds(const SimulationTrace& trace) {
    require_states(trace, 2, "check_belief_bounds");
    for (size_t t = 0; t + 1 < trace.states.size(); ++t) {
        const BeliefState& cur = trace.states[t];
        const BeliefState& next = trace.states[t + 1];
        const double lo = cur.min(), hi = cur.max();
        for (int i = 0; i < next.size(); ++i) {
            if (next[i] - hi > kCheckTol)
                return fail("belief_bounds", static_cast<int>(t), i, next[i], hi, hi - next[i]);
            if (lo - next[i] > kCheckTol)
                return fail("belief_bounds", static_cast<int>(t), i, next[i], lo, next[i] - lo);
        }
    }
    return pass("belief_bounds");
}

CheckReport check_order_preservation(const SimulationTrace& trace,
                                     const GraphClassReport& report) {
    if (!report.clique_constant)
        throw std::invalid_argument("check_order_preservation: graph is not a uniform clique");
    require_states(trace, 2, "check_order_preservation");
    for (size_t t = 0; t + 1 < trace.states.size(); ++t) {
        const BeliefState& cur = trace.states[t];
        const BeliefState& next = trace.states[t + 1];
        for (int i = 0; i < cur.size(); ++i) {
            for (int j = i + 1; j < cur.size(); ++j) {
                // Pairs tied within tolerance carry no order to preserve.
                if (cur[i] - cur[j] > kCheckTol && next[j] - next[i] > kCheckTol)
                    return fail("order_preservation", static_cast<int>(t), i, next[i], next[j],
                                next[i] - next[j]);
                if (cur[j] - cur[i] > kCheckTol && next[i] - next[j] > kCheckTol)
                    return fail("order_preservation", static_cast<int>(t), j, next[j], next[i],
                                next[j] - next[i]);
            }
        }
    }
    return pass("order_preservation");
}

CheckReport check_conservation(const SimulationTrace& trace, const GraphClassReport& report) {
    if (!report.balanced)
        throw std::invalid_argument("check_conservation: graph is not balanced");
    if (trace.update_kind != UpdateKind::Regular)
        throw std::invalid_argument("check_conservation: trace must use the regular update");
    require_states(trace, 1, "check_conservation");
    const int n = trace.states.front().size();
    double sum0 = 0.0;
    for (double v : trace.states.front().values()) sum0 += v;
    for (size_t t = 1; t < trace.states.size(); ++t) {
        double sum = 0.0;
        for (double v : trace.states[t].values()) sum += v;
        // Rounding budget grows with the number of elapsed steps.
        const double tol = n * kCheckTol * static_cast<double>(t);
        if (std::fabs(sum - sum0) > tol)
            return fail("conservation", static_cast<int>(t), -1, sum, sum0,
                        tol - std::fabs(sum - sum0));
    }
    return pass("conservation");
}

CheckReport check_geometric_gap(const SimulationTrace& trace, double c) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("check_geometric_gap: clique constant must lie in (0,1]");
    require_states(trace, 1, "check_geometric_gap");
    const double gap0 = trace.states.front().gap();
    for (size_t t = 0; t < trace.states.size(); ++t) {
        const double expected = std::pow(1.0 - c, static_cast<double>(t)) * gap0;
        const double observed = trace.states[t].gap();
        if (std::fabs(observed - expected) > kCheckLooseTol)
            return fail("geometric_gap", static_cast<int>(t), -1, observed, expected,
                        kCheckLooseTol - std::fabs(observed - expected));
    }
    return pass("geometric_gap");
}

CheckReport check_path_bound(const SimulationTrace& trace, const InfluenceGraph& g,
                             const std::vector<int>& path_agents, int t) {
    if (t < 0) throw std::invalid_argument("check_path_bound: t must be non-negative");
    const InfluencePath path = product_influence(g, path_agents);
    const size_t need = static_cast<size_t>(t) + static_cast<size_t>(path.size) + 2;
    require_states(trace, need, "check_path_bound");

    const int n = g.size();
    const int start = path.agents.front();
    const int end = path.agents.back();
    const double max_t = trace.states[static_cast<size_t>(t)].max();
    const double start_t = trace.states[static_cast<size_t>(t)][start];

    // Influence arriving over the path caps the end agent below the running
    // maximum after |path| steps...
    const double reach = max_t + path.product_influence / std::pow(static_cast<double>(n), path.size)
                                     * (start_t - max_t);
    const double at_arrival = trace.states[static_cast<size_t>(t) + path.size][end];
    if (at_arrival - reach > kCheckTol)
        return fail("path_bound", t, end, at_arrival, reach, reach - at_arrival);

    // ... and the deficit it created decays by at most a factor n per step.
    const double gamma = std::max(0.0, max_t - at_arrival);
    const double keep = max_t - gamma / n;
    const double one_later = trace.states[static_cast<size_t>(t) + path.size + 1][end];
    if (one_later - keep > kCheckTol)
        return fail("path_bound", t, end, one_later, keep, keep - one_later);
    return pass("path_bound");
}

CheckReport check_cb_fixedpoint(const BeliefState& b, const InfluenceGraph& g) {
    for (int i = 0; i < b.size(); ++i)
        if (b[i] != 0.0 && b[i] != 1.0)
            throw std::invalid_argument("check_cb_fixedpoint: beliefs must all be exactly 0 or 1");
    const BeliefState next = confirmation_bias_step(b, g);
    for (int i = 0; i < b.size(); ++i)
        if (next[i] != b[i])
            return fail("cb_fixedpoint", 0, i, next[i], b[i], -std::fabs(next[i] - b[i]));
    return pass("cb_fixedpoint");
}

}  // namespace opdyn

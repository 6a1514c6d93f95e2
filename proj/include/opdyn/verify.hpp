#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opdyn/core.hpp"
#include "opdyn/graphs.hpp"

// Executable checks of the model's dynamical guarantees. Each checker scans
// a concrete trace for a violation of one law and reports the first hit with
// enough context to reproduce it. Precondition violations (wrong graph kind,
// trace too short) throw; a law violation is a negative result, not an error.
namespace opdyn {

// Slack allowed on one-step comparisons before calling them violations.
inline constexpr double kCheckTol = 1e-12;
// Looser slack for quantities built from many rounding steps (gap decay law).
inline constexpr double kCheckLooseTol = 1e-9;

struct CheckViolation {
    int t = 0;      // step index the violated comparison starts from
    int agent = 0;  // offending agent
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // signed margin, negative means violated
};

struct CheckReport {
    std::string name;
    bool passed = false;
    std::optional<CheckViolation> first_violation;
};

// Every agent stays inside the previous step's [min, max] band.
// Needs at least two states.
CheckReport check_belief_bounds(const SimulationTrace& trace);

// On a uniform clique, agents never swap belief order between consecutive
// steps. Requires report.clique_constant.
CheckReport check_order_preservation(const SimulationTrace& trace, const GraphClassReport& report);

// On a balanced graph under the regular update, the belief sum never drifts
// from its initial value (tolerance n * kCheckTol per elapsed step).
// Requires report.balanced and a Regular trace.
CheckReport check_conservation(const SimulationTrace& trace, const GraphClassReport& report);

// On a uniform c-clique, the spread at step t equals (1-c)^t times the
// initial spread within kCheckLooseTol.
CheckReport check_geometric_gap(const SimulationTrace& trace, double c);

// Influence flowing along a concrete path drags the path's end agent below
// the running maximum: after |path| steps from t the end agent sits at most
// at max_t + product/n^|path| * (start_t - max_t), and one further step
// keeps it at least gamma/n below max_t, where gamma is the observed
// deficit. The trace must contain step t + |path| + 1.
CheckReport check_path_bound(const SimulationTrace& trace, const InfluenceGraph& g,
                             const std::vector<int>& path_agents, int t);

// A state with every belief exactly 0 or 1 must be an exact fixed point of
// the confirmation-bias update. Requires such a state.
CheckReport check_cb_fixedpoint(const BeliefState& b, const InfluenceGraph& g);

}  // namespace opdyn

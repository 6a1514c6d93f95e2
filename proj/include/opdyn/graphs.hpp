#pragma once

#include <optional>
#include <vector>

#include "opdyn/core.hpp"

// Influence-graph construction and structural classification: canonical
// families, connectivity/balance reports, and influence paths.
namespace opdyn {

// In/out weight sums per agent may differ by rounding; they count as equal
// within this tolerance when deciding balance.
inline constexpr double kBalanceTol = 1e-9;

enum class GraphKind { Clique, Circular, Disconnected, Unrelenting, Faint };

// Structural summary of a graph: connectivity of the positive-weight
// support, whether every agent's outgoing weight equals its incoming weight
// (a circulation), the shared off-diagonal constant when the graph is a
// uniform clique, and the smallest positive weight anywhere.
struct GraphClassReport {
    bool strongly_connected = false;
    bool weakly_connected = false;
    bool balanced = false;
    std::optional<double> clique_constant;
    std::optional<double> min_positive_influence;
};

// A directed path of pairwise-distinct agents whose consecutive edges all
// carry positive weight. size is the hop count, product_influence the
// product of the traversed weights.
struct InfluencePath {
    std::vector<int> agents;
    double product_influence = 1.0;
    int size = 0;  // agents.size() - 1
};

// Canonical families:
//   Clique        every off-diagonal weight is c
//   Circular      one directed cycle 0 -> 1 -> ... -> n-1 -> 0 with weight c
//   Disconnected  two internally uniform halves (split at ceil(n/2)) with no
//                 cross influence
//   Unrelenting   agents 0 and n-1 push 0.6 onto everyone, accept nothing,
//                 and the middle agents trade 0.1 among themselves (n >= 3)
//   Faint         two groups trading 0.5 internally and only 0.1 across
// c is ignored for the parameter-free kinds. Throws std::invalid_argument on
// bad n or c.
InfluenceGraph gen_influence(GraphKind kind, int n, double c = 0.5);

GraphClassReport classify(const InfluenceGraph& g);

// Partition of the agents into strongly connected components of the
// positive-weight support, each sorted ascending, components ordered by
// smallest member.
std::vector<std::vector<int>> strongly_connected_components(const InfluenceGraph& g);

// Validates the agent sequence as a path in g and computes its weight
// product. Throws std::invalid_argument when agents repeat, the sequence is
// shorter than two agents, an index is out of range, or a consecutive edge
// has zero weight.
InfluencePath product_influence(const InfluenceGraph& g, const std::vector<int>& agents);

const char* to_string(GraphKind kind);

}  // namespace opdyn

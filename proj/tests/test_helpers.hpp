#pragma once

// Seeded random instance generators shared by the unit and acceptance suites.
// Everything is driven by an explicit mt19937_64 so failures reproduce.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "opdyn/core.hpp"

namespace testutil {

inline opdyn::BeliefState random_beliefs(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> value(0.0, 1.0);
    std::vector<double> b(static_cast<size_t>(n));
    for (double& v : b) v = value(rng);
    return opdyn::BeliefState(std::move(b));
}

// Independent entries: each off-diagonal weight present with probability
// `density`, drawn from [0.05, 1]. No structural guarantees.
inline opdyn::InfluenceGraph random_graph(std::mt19937_64& rng, int n, double density = 0.5) {
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && coin(rng) < density) w[static_cast<size_t>(i) * n + j] = weight(rng);
    return opdyn::InfluenceGraph(n, std::move(w));
}

// Strongly connected by construction: a full ring plus random extra edges.
inline opdyn::InfluenceGraph random_strongly_connected(std::mt19937_64& rng, int n,
                                                       double extra_density = 0.3) {
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (j != i) w[static_cast<size_t>(i) * n + j] = weight(rng);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && w[static_cast<size_t>(i) * n + j] == 0.0 && coin(rng) < extra_density)
                w[static_cast<size_t>(i) * n + j] = weight(rng);
    return opdyn::InfluenceGraph(n, std::move(w));
}

// Superposition of directed cycles, one weight per cycle: every agent's
// out-weight equals its in-weight by construction. When the superposition
// pushes an entry past 1 the whole matrix is rescaled (scaling preserves the
// balance, clamping a single entry would not). With `spanning` the first
// cycle visits every agent, making the result weakly connected.
inline opdyn::InfluenceGraph random_circulation(std::mt19937_64& rng, int n, int extra_cycles,
                                                bool spanning) {
    std::uniform_real_distribution<double> weight01(0.0, 1.0);
    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);

    auto add_cycle = [&](const std::vector<int>& cycle) {
        const double wt = 1.0 - weight01(rng);  // (0, 1]
        for (size_t k = 0; k < cycle.size(); ++k) {
            const int a = cycle[k];
            const int b = cycle[(k + 1) % cycle.size()];
            if (a != b) w[static_cast<size_t>(a) * n + b] += wt;
        }
    };

    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    if (spanning && n >= 2) {
        std::shuffle(all.begin(), all.end(), rng);
        add_cycle(all);
    }
    std::uniform_int_distribution<int> cycle_len(2, std::max(2, n));
    for (int c = 0; c < extra_cycles; ++c) {
        if (n < 2) break;
        const int len = std::min(n, cycle_len(rng));
        std::shuffle(all.begin(), all.end(), rng);
        add_cycle(std::vector<int>(all.begin(), all.begin() + len));
    }

    double max_entry = 0.0;
    for (double v : w) max_entry = std::max(max_entry, v);
    if (max_entry > 1.0)
        for (double& v : w) v /= max_entry;
    return opdyn::InfluenceGraph(n, std::move(w));
}

// Beliefs drawn from {0, 1} only.
inline opdyn::BeliefState random_extreme_beliefs(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<double> b(static_cast<size_t>(n));
    for (double& v : b) v = static_cast<double>(bit(rng));
    return opdyn::BeliefState(std::move(b));
}

}  // namespace testutil

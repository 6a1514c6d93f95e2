#include "opdyn/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace opdyn {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void require_unit_range(double c) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("influence constant must lie in (0,1]");
}

std::vector<std::vector<int>> out_neighbors(const InfluenceGraph& g) {
    const int n = g.size();
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.weight(i, j) > 0.0) adj[static_cast<size_t>(i)].push_back(j);
    return adj;
}

// Union-find over agents, used for weak connectivity.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

InfluenceGraph gen_influence(GraphKind kind, int n, double c) {
    if (n < 1) throw std::invalid_argument("influence graph needs at least one agent");
    if (kind == GraphKind::Unrelenting && n < 3)
        throw std::invalid_argument("unrelenting influence needs at least three agents");
    if (kind == GraphKind::Clique || kind == GraphKind::Circular) require_unit_range(c);

    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return w[static_cast<size_t>(i) * n + j]; };
    const int half = ceil_div(n, 2);

    switch (kind) {
        case GraphKind::Clique:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) at(i, j) = c;
            break;
        case GraphKind::Circular:
            for (int i = 0; i < n; ++i) {
                const int j = (i + 1) % n;
                if (j != i) at(i, j) = c;  // n == 1 would be a self-loop; leave it zero
            }
            break;
        case GraphKind::Disconnected:
            // Two internally uniform halves, no influence across the split.
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && (i < half) == (j < half)) at(i, j) = 0.5;
            break;
        case GraphKind::Unrelenting:
            // Agents 0 and n-1 push hard on everyone and accept nothing;
            // nobody (including each other) reaches them back.
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if ((i == 0 && j != n - 1) || (i == n - 1 && j != 0))
                        at(i, j) = 0.6;
                    else if (j == 0 || j == n - 1)
                        at(i, j) = 0.0;
                    else
                        at(i, j) = 0.1;  // middle agent to middle agent
                }
            }
            break;
        case GraphKind::Faint:
            // Two groups (split just above the midpoint) with strong internal
            // and faint cross influence.
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) at(i, j) = (i <= half) == (j <= half) ? 0.5 : 0.1;
            break;
    }
    return InfluenceGraph(n, std::move(w));
}

std::vector<std::vector<int>> strongly_connected_components(const InfluenceGraph& g) {
    const int n = g.size();
    const std::vector<std::vector<int>> adj = out_neighbors(g);

    // Iterative Tarjan: frame = (node, index of the next child to visit).
    std::vector<int> index(static_cast<size_t>(n), -1);
    std::vector<int> lowlink(static_cast<size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::pair<int, size_t>> frames;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    for (int root = 0; root < n; ++root) {
        if (index[static_cast<size_t>(root)] != -1) continue;
        frames.emplace_back(root, 0);
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child == 0) {
                index[static_cast<size_t>(v)] = lowlink[static_cast<size_t>(v)] = next_index++;
                stack.push_back(v);
                on_stack[static_cast<size_t>(v)] = true;
            }
            if (child < adj[static_cast<size_t>(v)].size()) {
                const int u = adj[static_cast<size_t>(v)][child++];
                if (index[static_cast<size_t>(u)] == -1) {
                    frames.emplace_back(u, 0);
                } else if (on_stack[static_cast<size_t>(u)]) {
                    lowlink[static_cast<size_t>(v)] =
                        std::min(lowlink[static_cast<size_t>(v)], index[static_cast<size_t>(u)]);
                }
                continue;
            }
            if (lowlink[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
                std::vector<int> comp;
                int u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<size_t>(u)] = false;
                    comp.push_back(u);
                } while (u != v);
                components.push_back(std::move(comp));
            }
            const int finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                const int parent = frames.back().first;
                lowlink[static_cast<size_t>(parent)] = std::min(
                    lowlink[static_cast<size_t>(parent)], lowlink[static_cast<size_t>(finished)]);
            }
        }
    }

    // Canonical order: members ascending, components by smallest member.
    for (auto& comp : components) std::sort(comp.begin(), comp.end());
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

GraphClassReport classify(const InfluenceGraph& g) {
    const int n = g.size();
    GraphClassReport report;

    report.strongly_connected = strongly_connected_components(g).size() == 1;

    Dsu dsu(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.weight(i, j) > 0.0) dsu.unite(i, j);
    int roots = 0;
    for (int i = 0; i < n; ++i)
        if (dsu.find(i) == i) ++roots;
    report.weakly_connected = roots == 1;

    report.balanced = true;
    for (int i = 0; i < n && report.balanced; ++i) {
        double out = 0.0, in = 0.0;
        for (int j = 0; j < n; ++j) {
            out += g.weight(i, j);
            in += g.weight(j, i);
        }
        if (std::fabs(out - in) > kBalanceTol) report.balanced = false;
    }

    if (n >= 2) {
        const double c = g.weight(0, 1);
        bool uniform = c > 0.0;
        for (int i = 0; i < n && uniform; ++i)
            for (int j = 0; j < n && uniform; ++j)
                if (i != j && g.weight(i, j) != c) uniform = false;
        if (uniform) report.clique_constant = c;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = g.weight(i, j);
            if (v > 0.0 && (!report.min_positive_influence || v < *report.min_positive_influence))
                report.min_positive_influence = v;
        }
    }
    return report;
}

InfluencePath product_influence(const InfluenceGraph& g, const std::vector<int>& agents) {
    if (agents.size() < 2)
        throw std::invalid_argument("influence path needs at least two agents");
    std::vector<int> seen(static_cast<size_t>(g.size()), 0);
    for (int a : agents) {
        if (a < 0 || a >= g.size())
            throw std::invalid_argument("influence path agent out of range");
        if (seen[static_cast<size_t>(a)]++)
            throw std::invalid_argument("influence path agents must be pairwise distinct");
    }
    InfluencePath path;
    path.agents = agents;
    path.size = static_cast<int>(agents.size()) - 1;
    for (size_t k = 0; k + 1 < agents.size(); ++k) {
        const double w = g.weight(agents[k], agents[k + 1]);
        if (!(w > 0.0))
            throw std::invalid_argument("influence path requires positive consecutive weights");
        path.product_influence *= w;
    }
    return path;
}

const char* to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Clique: return "clique";
        case GraphKind::Circular: return "circular";
        case GraphKind::Disconnected: return "disconnected";
        case GraphKind::Unrelenting: return "unrelenting";
        case GraphKind::Faint: return "faint";
    }
    return "?";
}

}  // namespace opdyn

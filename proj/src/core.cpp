#include "opdyn/core.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace opdyn {

namespace {

// Post-step guard: rounding may push a convex combination a few ulp outside
// [0,1]; snap that back. Anything beyond the guard tolerance is a kernel bug.
double snap_unit(double v) {
    if (v < 0.0) {
        if (v < -kStepGuardTol) throw std::logic_error("belief update left [0,1]");
        return 0.0;
    }
    if (v > 1.0) {
        if (v > 1.0 + kStepGuardTol) throw std::logic_error("belief update left [0,1]");
        return 1.0;
    }
    return v;
}

void require_same_size(const BeliefState& b, const InfluenceGraph& g) {
    if (b.size() != g.size())
        throw std::invalid_argument("belief state and influence graph sizes differ");
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

BeliefState::BeliefState(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("belief state needs at least one agent");
    for (double v : values_)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("belief values must lie in [0,1]");
}

double BeliefState::max() const {
    double m = values_[0];
    for (double v : values_)
        if (v > m) m = v;
    return m;
}

double BeliefState::min() const {
    double m = values_[0];
    for (double v : values_)
        if (v < m) m = v;
    return m;
}

double BeliefState::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(size());
}

InfluenceGraph::InfluenceGraph(int n, std::vector<double> row_major_weights)
    : n_(n), w_(std::move(row_major_weights)) {
    if (n_ < 1) throw std::invalid_argument("influence graph needs at least one agent");
    if (w_.size() != static_cast<size_t>(n_) * n_)
        throw std::invalid_argument("influence weights must be an n x n matrix");
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            double v = w_[static_cast<size_t>(i) * n_ + j];
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("influence weights must lie in [0,1]");
            if (i == j && v != 0.0)
                throw std::invalid_argument("influence diagonal must be zero");
        }
    }
}

InfluenceGraph InfluenceGraph::zero(int n) {
    if (n < 1) throw std::invalid_argument("influence graph needs at least one agent");
    return InfluenceGraph(n, std::vector<double>(static_cast<size_t>(n) * n, 0.0));
}

BeliefState gen_initial_beliefs(BeliefConfig config, int n) {
    if (n < 1) throw std::invalid_argument("belief configuration needs at least one agent");
    if (config == BeliefConfig::Tripolar && n < 3)
        throw std::invalid_argument("tripolar configuration needs at least three agents");

    std::vector<double> b(static_cast<size_t>(n));
    const int half = ceil_div(n, 2);
    const int third = n / 3;
    const int two_thirds = ceil_div(2 * n, 3);
    for (int i = 0; i < n; ++i) {
        double v = 0.0;
        switch (config) {
            case BeliefConfig::Uniform:
                // Evenly spaced over [0,1]; a single agent degenerates to 0,
                // matching agent 0's value at every larger size.
                v = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
                break;
            case BeliefConfig::Mild:
                v = 0.8 * i / n + (i < half ? 0.0 : 0.2);
                break;
            case BeliefConfig::Extreme:
                v = 0.4 * i / n + (i < half ? 0.0 : 0.6);
                break;
            case BeliefConfig::Tripolar:
                v = 0.6 * i / n + (i < third ? 0.0 : i < two_thirds ? 0.2 : 0.4);
                break;
        }
        b[static_cast<size_t>(i)] = v;
    }
    return BeliefState(std::move(b));
}

// Both kernels parallelize across agents only: each output element is one
// serial ascending-j accumulation owned by a single thread, so the result is
// bit-identical to the serial reference regardless of thread count.
BeliefState regular_step(const BeliefState& b, const InfluenceGraph& g) {
    require_same_size(b, g);
    const int n = g.size();
    const std::vector<double>& x = b.values();
    std::vector<double> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += g.weight(j, i) * (x[j] - x[i]);
        out[static_cast<size_t>(i)] = snap_unit(x[i] + acc / n);
    }
    return BeliefState(std::move(out));
}

BeliefState confirmation_bias_step(const BeliefState& b, const InfluenceGraph& g) {
    require_same_size(b, g);
    const int n = g.size();
    const std::vector<double>& x = b.values();
    std::vector<double> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = x[j] - x[i];
            acc += (1.0 - std::fabs(d)) * g.weight(j, i) * d;
        }
        out[static_cast<size_t>(i)] = snap_unit(x[i] + acc / n);
    }
    return BeliefState(std::move(out));
}

BeliefState step(const BeliefState& b, const InfluenceGraph& g, UpdateKind kind) {
    return kind == UpdateKind::Regular ? regular_step(b, g) : confirmation_bias_step(b, g);
}

StepBreakdown step_breakdown(const BeliefState& b, const InfluenceGraph& g, UpdateKind kind) {
    require_same_size(b, g);
    const int n = g.size();
    const std::vector<double>& x = b.values();
    StepBreakdown out;
    out.n = n;
    out.pairwise.resize(static_cast<size_t>(n) * n);
    out.factors.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d = x[j] - x[i];
            const double f = kind == UpdateKind::Regular ? 1.0 : 1.0 - std::fabs(d);
            out.factors[static_cast<size_t>(i) * n + j] = f;
            out.pairwise[static_cast<size_t>(i) * n + j] = snap_unit(x[i] + f * g.weight(j, i) * d);
        }
    }
    return out;
}

SimulationTrace run(const BeliefState& b0, const InfluenceGraph& g, UpdateKind kind,
                    int max_steps, std::optional<double> stop_gap) {
    require_same_size(b0, g);
    if (max_steps < 0) throw std::invalid_argument("max_steps must be non-negative");
    if (stop_gap && !(*stop_gap > 0.0)) throw std::invalid_argument("stop_gap must be positive");

    SimulationTrace trace;
    trace.update_kind = kind;
    trace.states.push_back(b0);
    trace.stop_reason = StopReason::MaxSteps;
    for (int t = 1; t <= max_steps; ++t) {
        trace.states.push_back(step(trace.states.back(), g, kind));
        if (stop_gap && trace.states.back().gap() < *stop_gap) {
            trace.stop_reason = StopReason::GapBelowTolerance;
            break;
        }
    }
    trace.steps_taken = static_cast<int>(trace.states.size()) - 1;
    return trace;
}

const char* to_string(UpdateKind kind) {
    return kind == UpdateKind::Regular ? "regular" : "confirmation_bias";
}

const char* to_string(StopReason reason) {
    return reason == StopReason::MaxSteps ? "max_steps" : "gap_below_tolerance";
}

const char* to_string(BeliefConfig config) {
    switch (config) {
        case BeliefConfig::Uniform: return "uniform";
        case BeliefConfig::Mild: return "mild";
        case BeliefConfig::Extreme: return "extreme";
        case BeliefConfig::Tripolar: return "tripolar";
    }
    return "?";
}

}  // namespace opdyn

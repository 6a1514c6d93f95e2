#pragma once

#include <optional>
#include <string>
#include <vector>

// Core model: agents hold beliefs in [0,1] and update them synchronously by
// averaging weighted disagreements with every other agent, optionally damped
// by a confirmation-bias factor that shrinks with belief distance.
namespace opdyn {

// Beliefs are snapped back into [0,1] after each step; anything farther out
// than this indicates a genuine kernel bug, not rounding, and throws.
inline constexpr double kStepGuardTol = 1e-12;

// Row-parallel kernels fall back to plain serial loops below this size so
// tiny problems do not pay thread-team overhead. Results are bit-identical
// either way (each output element is always one serial ascending-j sum).
inline constexpr int kParallelCutoff = 64;

enum class UpdateKind { Regular, ConfirmationBias };

enum class StopReason { MaxSteps, GapBelowTolerance };

enum class BeliefConfig { Uniform, Mild, Extreme, Tripolar };

// One belief value per agent, every value in [0,1]. Immutable after construction.
class BeliefState {
  public:
    explicit BeliefState(std::vector<double> values);

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }

    double max() const;
    double min() const;
    double gap() const { return max() - min(); }  // max - min spread
    double mean() const;                          // ascending-index sum / n

    bool operator==(const BeliefState& other) const = default;

  private:
    std::vector<double> values_;
};

// Directed weighted influence matrix. weight(i, j) is how strongly agent i
// pulls agent j, in [0,1]. Self-influence is implicit in the update rule, so
// the diagonal must be zero; constructors reject anything else.
class InfluenceGraph {
  public:
    InfluenceGraph(int n, std::vector<double> row_major_weights);

    static InfluenceGraph zero(int n);

    int size() const { return n_; }
    double weight(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& weights() const { return w_; }

    bool operator==(const InfluenceGraph& other) const = default;

  private:
    int n_ = 0;
    std::vector<double> w_;  // row-major n*n
};

// Per-pair intermediate view of one update step: pairwise[i][j] is where
// agent i would land if j were its only interlocutor, factors[i][j] the
// bias damping applied to that pair (all ones for Regular). Row-averaging
// pairwise reproduces the step output.
struct StepBreakdown {
    int n = 0;
    std::vector<double> pairwise;  // row-major n*n
    std::vector<double> factors;   // row-major n*n

    double pair(int i, int j) const { return pairwise[static_cast<size_t>(i) * n + j]; }
    double factor(int i, int j) const { return factors[static_cast<size_t>(i) * n + j]; }
};

// Full history of a simulation run: states[0] is the initial state and each
// later entry is one synchronous update of its predecessor.
struct SimulationTrace {
    std::vector<BeliefState> states;
    UpdateKind update_kind = UpdateKind::Regular;
    int steps_taken = 0;  // == states.size() - 1
    StopReason stop_reason = StopReason::MaxSteps;

    const BeliefState& initial() const { return states.front(); }
    const BeliefState& final_state() const { return states.back(); }
};

// Canonical initial belief layouts: evenly spread, mildly split, split to the
// extremes, or split into three clusters. Throws std::invalid_argument for
// n < 1 (and n < 3 for Tripolar, which needs three groups).
BeliefState gen_initial_beliefs(BeliefConfig config, int n);

// One synchronous step: every agent moves by the average weighted
// disagreement with all agents. Throws on size mismatch.
BeliefState regular_step(const BeliefState& b, const InfluenceGraph& g);

// Same, but each pair's pull is damped by 1 - |belief difference|, so agents
// discount voices far from their own position.
BeliefState confirmation_bias_step(const BeliefState& b, const InfluenceGraph& g);

BeliefState step(const BeliefState& b, const InfluenceGraph& g, UpdateKind kind);

// The per-pair decomposition of the step that `kind` would take from b.
StepBreakdown step_breakdown(const BeliefState& b, const InfluenceGraph& g, UpdateKind kind);

// Run up to max_steps updates, stopping early when the belief spread drops
// strictly below stop_gap (checked after each step, when given).
SimulationTrace run(const BeliefState& b0, const InfluenceGraph& g, UpdateKind kind,
                    int max_steps, std::optional<double> stop_gap = std::nullopt);

const char* to_string(UpdateKind kind);
const char* to_string(StopReason reason);
const char* to_string(BeliefConfig config);

}  // namespace opdyn

#include "opdyn/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace opdyn {

BinSpec::BinSpec(std::vector<double> edges, std::vector<double> representatives)
    : edges_(std::move(edges)), reps_(std::move(representatives)) {
    if (reps_.empty() || edges_.size() != reps_.size() + 1)
        throw std::invalid_argument("bin spec needs k >= 1 bins and k+1 edges");
    if (edges_.front() != 0.0 || edges_.back() != 1.0)
        throw std::invalid_argument("bin edges must start at 0 and end at 1");
    for (size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (!(edges_[i] < edges_[i + 1]))
            throw std::invalid_argument("bin edges must be strictly increasing");
        if (!(edges_[i] <= reps_[i] && reps_[i] <= edges_[i + 1]))
            throw std::invalid_argument("bin representative must lie inside its bin");
    }
}

BinSpec BinSpec::uniform(int k) {
    if (k < 1) throw std::invalid_argument("bin count must be at least 1");
    std::vector<double> edges(static_cast<size_t>(k) + 1);
    std::vector<double> reps(static_cast<size_t>(k));
    for (int i = 0; i <= k; ++i) edges[static_cast<size_t>(i)] = static_cast<double>(i) / k;
    for (int i = 0; i < k; ++i)
        reps[static_cast<size_t>(i)] = (edges[static_cast<size_t>(i)] + edges[static_cast<size_t>(i) + 1]) / 2.0;
    return BinSpec(std::move(edges), std::move(reps));
}

int BinSpec::bin_of(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("value outside [0,1]");
    // Bins are half-open below the last edge; x == 1 lands in the last bin.
    auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    int idx = static_cast<int>(it - edges_.begin()) - 1;
    return std::min(idx, bins() - 1);
}

Distribution::Distribution(std::vector<double> weights, std::vector<double> values)
    : weights_(std::move(weights)), values_(std::move(values)) {
    if (weights_.empty() || weights_.size() != values_.size())
        throw std::invalid_argument("distribution needs matching, non-empty weights and values");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("distribution weights must be positive");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution weights must sum to 1");
}

void ErParams::validate() const {
    if (!(scale > 0.0)) throw std::invalid_argument("polarization scale must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("polarization alpha must be positive");
}

Distribution discretize(const BeliefState& b, const BinSpec& spec) {
    std::vector<int> counts(static_cast<size_t>(spec.bins()), 0);
    for (double v : b.values()) counts[static_cast<size_t>(spec.bin_of(v))]++;

    std::vector<double> weights;
    std::vector<double> values;
    const double n = static_cast<double>(b.size());
    for (int i = 0; i < spec.bins(); ++i) {
        if (counts[static_cast<size_t>(i)] == 0) continue;  // empty bins are dropped
        weights.push_back(counts[static_cast<size_t>(i)] / n);
        values.push_back(spec.representatives()[static_cast<size_t>(i)]);
    }
    return Distribution(std::move(weights), std::move(values));
}

double er_sum(const std::vector<double>& weights, const std::vector<double>& values,
              const ErParams& params) {
    params.validate();
    if (weights.size() != values.size())
        throw std::invalid_argument("weights and values must have matching lengths");
    const size_t k = weights.size();
    double sum = 0.0;  // fixed ascending (i, j) order keeps this bit-reproducible
    for (size_t i = 0; i < k; ++i) {
        const double wi = std::pow(weights[i], 1.0 + params.alpha);
        for (size_t j = 0; j < k; ++j)
            sum += wi * weights[j] * std::fabs(values[i] - values[j]);
    }
    return params.scale * sum;
}

double er_measure(const Distribution& dist, const ErParams& params) {
    return er_sum(dist.weights(), dist.values(), params);
}

std::vector<double> polarization_series(const SimulationTrace& trace, const BinSpec& spec,
                                        const ErParams& params) {
    std::vector<double> series;
    series.reserve(trace.states.size());
    for (const BeliefState& state : trace.states)
        series.push_back(er_measure(discretize(state, spec), params));
    return series;
}

}  // namespace opdyn

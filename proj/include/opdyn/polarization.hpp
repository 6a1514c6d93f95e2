#pragma once

#include <vector>

#include "opdyn/core.hpp"

// Polarization measurement: beliefs are bucketed into a histogram and scored
// with the Esteban-Ray measure, which rewards few large groups far apart and
// vanishes on consensus.
namespace opdyn {

inline constexpr int kDefaultBins = 5;
inline constexpr double kDefaultAlpha = 1.6;
inline constexpr double kDefaultScale = 1000.0;

// Histogram layout over [0,1]: k bins with strictly increasing edges from 0
// to 1 and one representative value inside each bin. Bins are half-open
// [edge_i, edge_{i+1}) except the last, which is closed at 1.
class BinSpec {
  public:
    BinSpec(std::vector<double> edges, std::vector<double> representatives);

    // k equal-width bins represented by their midpoints.
    static BinSpec uniform(int k = kDefaultBins);

    int bins() const { return static_cast<int>(reps_.size()); }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& representatives() const { return reps_; }

    // Index of the bin containing x in [0,1].
    int bin_of(double x) const;

  private:
    std::vector<double> edges_;  // size k+1
    std::vector<double> reps_;   // size k
};

// Discrete distribution with strictly positive weights summing to 1 and one
// support value per weight.
class Distribution {
  public:
    Distribution(std::vector<double> weights, std::vector<double> values);

    int size() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> weights_;
    std::vector<double> values_;
};

// Esteban-Ray parameters: overall scale and the polarization-sensitivity
// exponent on group sizes.
struct ErParams {
    double scale = kDefaultScale;  // multiplicative constant K > 0
    double alpha = kDefaultAlpha;  // group-size exponent, > 0

    void validate() const;  // throws std::invalid_argument when out of range
};

// Histogram of a belief state: weight = fraction of agents in the bin,
// value = the bin's representative. Empty bins are dropped.
Distribution discretize(const BeliefState& b, const BinSpec& spec);

// Raw double sum  scale * sum_i sum_j  w_i^(1+alpha) * w_j * |y_i - y_j|
// with no constraint on the weights; exposed so scaling laws can be tested
// on unnormalized weight vectors.
double er_sum(const std::vector<double>& weights, const std::vector<double>& values,
              const ErParams& params);

// Esteban-Ray polarization of a proper distribution.
double er_measure(const Distribution& dist, const ErParams& params);

// Polarization of every state in a trace, in trace order.
std::vector<double> polarization_series(const SimulationTrace& trace, const BinSpec& spec,
                                        const ErParams& params);

}  // namespace opdyn

#pragma once

#include <vector>

#include "opdyn/analysis.hpp"
#include "opdyn/core.hpp"

// Plain serial implementations of the row-parallel kernels, kept as the
// ground truth the OpenMP versions are tested against (bitwise) and the
// baseline the benchmark compares with. Same arithmetic, same ascending
// summation order, no pragmas.
namespace opdyn::reference {

BeliefState regular_step(const BeliefState& b, const InfluenceGraph& g);

BeliefState confirmation_bias_step(const BeliefState& b, const InfluenceGraph& g);

std::vector<double> apply_update_matrix(const UpdateMatrix& m, const std::vector<double>& x);

}  // namespace opdyn::reference

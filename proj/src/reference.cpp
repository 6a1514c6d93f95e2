#include "opdyn/reference.hpp"

#include <cmath>
#include <stdexcept>

// Serial twins of the parallel kernels. The arithmetic below must stay
// expression-for-expression identical to the OpenMP versions; the kernel
// equality tests compare the two bitwise.
namespace opdyn::reference {

namespace {

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

}  // namespace

BeliefState regular_step(const BeliefState& b, const InfluenceGraph& g) {
    if (b.size() != g.size())
        throw std::invalid_argument("belief state and influence graph sizes differ");
    const int n = g.size();
    const std::vector<double>& x = b.values();
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += g.weight(j, i) * (x[j] - x[i]);
        out[static_cast<size_t>(i)] = snap_unit(x[i] + acc / n);
    }
    return BeliefState(std::move(out));
}

BeliefState confirmation_bias_step(const BeliefState& b, const InfluenceGraph& g) {
    if (b.size() != g.size())
        throw std::invalid_argument("belief state and influence graph sizes differ");
    const int n = g.size();
    const std::vector<double>& x = b.values();
    std::vector<double> out(static_cast<size_t>(n));
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

std::vector<double> apply_update_matrix(const UpdateMatrix& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.n)
        throw std::invalid_argument("vector length and update matrix size differ");
    const int n = m.n;
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += m.at(i, j) * x[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

}  // namespace opdyn::reference

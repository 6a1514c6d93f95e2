#include <random>

#include "doctest.h"
#include "opdyn/analysis.hpp"
#include "opdyn/core.hpp"
#include "opdyn/reference.hpp"
#include "test_helpers.hpp"

using namespace opdyn;

// The production kernels parallelize across agents; every size, including
// those past the parallel cutoff, must reproduce the serial reference bit
// for bit.
TEST_CASE("parallel kernels match the serial reference bitwise") {
    std::mt19937_64 rng(71);
    for (int n : {1, 2, 7, 63, 64, 65, 200, 500}) {
        for (int trial = 0; trial < 3; ++trial) {
            const InfluenceGraph g = testutil::random_graph(rng, n, 0.5);
            const BeliefState b = testutil::random_beliefs(rng, n);
            CHECK(regular_step(b, g) == reference::regular_step(b, g));
            CHECK(confirmation_bias_step(b, g) == reference::confirmation_bias_step(b, g));
            const UpdateMatrix m = build_update_matrix(g);
            CHECK(apply_update_matrix(m, b.values()) ==
                  reference::apply_update_matrix(m, b.values()));
        }
    }
}

TEST_CASE("whole traces are reproducible through the parallel path") {
    std::mt19937_64 rng(72);
    const int n = 150;  // above the parallel cutoff
    const InfluenceGraph g = testutil::random_graph(rng, n, 0.5);
    const BeliefState b0 = testutil::random_beliefs(rng, n);
    for (UpdateKind kind : {UpdateKind::Regular, UpdateKind::ConfirmationBias}) {
        const SimulationTrace trace = run(b0, g, kind, 50);
        BeliefState serial = b0;
        for (size_t t = 1; t < trace.states.size(); ++t) {
            serial = kind == UpdateKind::Regular ? reference::regular_step(serial, g)
                                                 : reference::confirmation_bias_step(serial, g);
            CHECK(serial == trace.states[t]);
        }
    }
}

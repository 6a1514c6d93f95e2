// Times the OpenMP row-parallel kernels against their serial reference twins
// and confirms the outputs are bit-identical. Usage: step_bench [max_n]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "opdyn/analysis.hpp"
#include "opdyn/core.hpp"
#include "opdyn/reference.hpp"

namespace {

using Clock = std::chrono::steady_clock;

opdyn::InfluenceGraph random_graph(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && coin(rng) < 0.5) w[static_cast<size_t>(i) * n + j] = weight(rng);
    return opdyn::InfluenceGraph(n, std::move(w));
}

opdyn::BeliefState random_beliefs(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> value(0.0, 1.0);
    std::vector<double> b(static_cast<size_t>(n));
    for (double& v : b) v = value(rng);
    return opdyn::BeliefState(std::move(b));
}

template <typename F>
double ms_per_call(F&& f, int reps) {
    const auto start = Clock::now();
    for (int r = 0; r < reps; ++r) f();
    const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    return elapsed.count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const int max_n = argc > 1 ? std::atoi(argv[1]) : 2048;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%8s %12s %12s %12s %12s %8s\n", "n", "kernel", "serial ms", "parallel ms",
                "speedup", "equal");

    std::mt19937_64 rng(20240811);
    for (int n = 128; n <= max_n; n *= 2) {
        const opdyn::InfluenceGraph g = random_graph(rng, n);
        const opdyn::BeliefState b = random_beliefs(rng, n);
        const opdyn::UpdateMatrix m = opdyn::build_update_matrix(g);
        const int reps = n >= 1024 ? 20 : 200;

        {
            const opdyn::BeliefState serial = opdyn::reference::regular_step(b, g);
            const opdyn::BeliefState parallel = opdyn::regular_step(b, g);
            const double ts = ms_per_call([&] { (void)opdyn::reference::regular_step(b, g); }, reps);
            const double tp = ms_per_call([&] { (void)opdyn::regular_step(b, g); }, reps);
            std::printf("%8d %12s %12.4f %12.4f %12.2f %8s\n", n, "regular", ts, tp, ts / tp,
                        serial == parallel ? "yes" : "NO");
        }
        {
            const opdyn::BeliefState serial = opdyn::reference::confirmation_bias_step(b, g);
            const opdyn::BeliefState parallel = opdyn::confirmation_bias_step(b, g);
            const double ts =
                ms_per_call([&] { (void)opdyn::reference::confirmation_bias_step(b, g); }, reps);
            const double tp = ms_per_call([&] { (void)opdyn::confirmation_bias_step(b, g); }, reps);
            std::printf("%8d %12s %12.4f %12.4f %12.2f %8s\n", n, "biased", ts, tp, ts / tp,
                        serial == parallel ? "yes" : "NO");
        }
        {
            const std::vector<double> serial = opdyn::reference::apply_update_matrix(m, b.values());
            const std::vector<double> parallel = opdyn::apply_update_matrix(m, b.values());
            const double ts =
                ms_per_call([&] { (void)opdyn::reference::apply_update_matrix(m, b.values()); }, reps);
            const double tp = ms_per_call([&] { (void)opdyn::apply_update_matrix(m, b.values()); }, reps);
            std::printf("%8d %12s %12.4f %12.4f %12.2f %8s\n", n, "matvec", ts, tp, ts / tp,
                        serial == parallel ? "yes" : "NO");
        }
    }
    return 0;
}

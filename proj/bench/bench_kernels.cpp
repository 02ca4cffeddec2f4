// Serial reference vs OpenMP kernels: exhaustive I-map verification and the
// trial-parallel sensitivity experiment.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "sparsebn/builder.hpp"
#include "sparsebn/harness.hpp"
#include "sparsebn/verify.hpp"

using namespace sparsebn;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
               .count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const int trials = argc > 1 ? std::atoi(argv[1]) : 8;
    std::printf("threads: %d\n", omp_get_max_threads());

    for (std::size_t n : {8, 10, 12, 14}) {
        const Dag truth = random_dag({n, n + n / 2, std::nullopt, n});
        const DsepOracle oracle(truth);
        const auto info = compile({}, truth.names());
        const Dag built = build(oracle, info).network;
        bool a = false, b = false;
        const double serial = time_ms([&] { a = is_minimal_imap_reference(built, oracle); }, 3);
        const double parallel = time_ms([&] { b = is_minimal_imap(built, oracle); }, 3);
        std::printf("minimal-imap n=%2zu arcs=%2zu  serial %9.2f ms  parallel %9.2f ms  x%.2f%s\n",
                    n, built.arc_count(), serial, parallel, serial / parallel,
                    a == b ? "" : "  MISMATCH");
    }

    const Dag truth = random_dag({26, 36, std::nullopt, 7});
    ExperimentConfig config;
    config.trials = static_cast<std::size_t>(trials);
    config.seed = 7;
    const double serial = time_ms([&] { sensitivity_experiment_serial(truth, config); }, 1);
    const double parallel = time_ms([&] { sensitivity_experiment(truth, config); }, 1);
    std::printf("experiment 26/36 trials=%d  serial %9.2f ms  parallel %9.2f ms  x%.2f\n", trials,
                serial, parallel, serial / parallel);
}

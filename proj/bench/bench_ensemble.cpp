// Serial reference vs OpenMP ensemble runner on the evaluation-size workload.
// Usage: bench_ensemble [trials] [max_steps]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "evosocial/simulator.hpp"

using namespace evosocial;

int main(int argc, char** argv) {
    using clock = std::chrono::steady_clock;
    EnsembleOptions opts;
    opts.trials = argc > 1 ? std::atoi(argv[1]) : 32;
    opts.max_steps = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : kDefaultMaxSteps;
    opts.base_seed = 1;
    opts.graph_seed = 2;
    const GameParams gp{20, 0.5, 0.05, 1000};
    const TypeProfile prof{{0.2, 0.85}, {0.5, 0.5}};

    auto t0 = clock::now();
    const EnsembleResult serial = run_ensemble_serial(prof, gp, opts);
    auto t1 = clock::now();
    const EnsembleResult parallel = run_ensemble(prof, gp, opts);
    auto t2 = clock::now();

    const double serial_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double parallel_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    std::printf("threads   %d\n", omp_get_max_threads());
    std::printf("trials    %d x %llu steps\n", opts.trials, static_cast<unsigned long long>(opts.max_steps));
    std::printf("serial    %.1f ms\n", serial_ms);
    std::printf("parallel  %.1f ms  (speedup %.2fx)\n", parallel_ms, serial_ms / parallel_ms);
    std::printf("mean x    %.6f / %.6f  %s\n", serial.mean_final_x, parallel.mean_final_x,
                serial == parallel ? "identical" : "MISMATCH");
    return serial == parallel ? 0 : 1;
}

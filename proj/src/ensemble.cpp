#include <exception>
#include <numeric>

#include "evosocial/simulator.hpp"

namespace evosocial {

namespace {

void check_options(const EnsembleOptions& options) {
    if (options.trials < 1) throw ValidationError("trials must be at least 1");
    if (options.max_steps < 1) throw ValidationError("max_steps must be at least 1");
}

TrialResult run_one(const TypeProfile& profile, const GameParams& params, const EnsembleOptions& options,
                    int trial) {
    const std::uint64_t seed = trial_seed(options.base_seed, trial);
    if (options.fixed_graph != nullptr) {
        return DeathBirthProcess(*options.fixed_graph, profile, params)
            .run_trial(seed, options.max_steps, options.sample_every, options.rule);
    }
    const RegularGraph g = generate_regular(params.n_agents, params.k, trial_graph_seed(options.graph_seed, trial));
    return DeathBirthProcess(g, profile, params).run_trial(seed, options.max_steps, options.sample_every, options.rule);
}

EnsembleResult summarize(std::vector<TrialResult> results) {
    EnsembleResult out;
    out.trials = static_cast<int>(results.size());
    // Summed in trial order so serial and parallel runs agree bit for bit.
    double sum = 0.0;
    for (const TrialResult& r : results) sum += r.final_x;
    out.mean_final_x = sum / out.trials;
    out.results = std::move(results);
    return out;
}

} // namespace

EnsembleResult run_ensemble_serial(const TypeProfile& profile, const GameParams& params,
                                   const EnsembleOptions& options) {
    check_options(options);
    profile.validate();
    params.validate();
    std::vector<TrialResult> results;
    results.reserve(static_cast<std::size_t>(options.trials));
    for (int t = 0; t < options.trials; ++t) results.push_back(run_one(profile, params, options, t));
    return summarize(std::move(results));
}

EnsembleResult run_ensemble(const TypeProfile& profile, const GameParams& params, const EnsembleOptions& options) {
    check_options(options);
    profile.validate();
    params.validate();
    std::vector<TrialResult> results(static_cast<std::size_t>(options.trials));
    std::exception_ptr failure;

    #pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < options.trials; ++t) {
        try {
            results[static_cast<std::size_t>(t)] = run_one(profile, params, options, t);
        } catch (...) {
            #pragma omp critical(evosocial_ensemble_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return summarize(std::move(results));
}

} // namespace evosocial

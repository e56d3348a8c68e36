#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evosocial/core_model.hpp"
#include "evosocial/network.hpp"
#include "evosocial/rng.hpp"

namespace evosocial {

enum class InitialRule { FairCoin, AllZero, AllOne };

/// Decisions of every agent plus running per-type decision-0 counts.
struct SimState {
    std::vector<std::uint8_t> decisions;  // 0 or 1 per agent
    std::vector<int> type_of;             // type index per agent
    std::vector<int> counts;              // decision-0 agents per type
    std::vector<int> type_sizes;          // agents per type
    std::uint64_t step = 0;

    int zeros() const;
    double x_total() const;
    std::vector<double> x_per_type() const;
    bool absorbed() const;
};

/// Splits n agents into types by largest-remainder rounding of n * q_i.
/// Throws ValidationError when some type would receive no agents.
std::vector<int> apportion_types(int n, const std::vector<double>& proportions);

struct TrajectoryPoint {
    std::uint64_t step = 0;
    double x_total = 0.0;
    std::vector<double> x_per_type;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct TrialResult {
    double final_x = 0.0;
    std::vector<double> final_x_per_type;
    std::vector<TrajectoryPoint> samples;  // step 0, every sample_every steps, and the last step
    bool absorbed = false;
    std::uint64_t steps_run = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct StepOutcome {
    int agent = 0;
    std::uint8_t before = 0;
    std::uint8_t after = 0;
};

/// Death-birth decision updates on a fixed graph. Holds, per type and per
/// decision-0 neighbour count k0, the probability that a dying agent re-adopts
/// decision 0: k0 pi0 / (k0 pi0 + (k - k0) pi1).
class DeathBirthProcess {
public:
    DeathBirthProcess(const RegularGraph& graph, TypeProfile profile, GameParams params);

    const RegularGraph& graph() const { return *graph_; }
    const TypeProfile& profile() const { return profile_; }
    const GameParams& params() const { return params_; }

    double prob_zero(int type_index, int k0) const {
        return prob_zero_[static_cast<std::size_t>(type_index) * stride_ + static_cast<std::size_t>(k0)];
    }

    /// Type blocks go to consecutive node indices; the graph is already random.
    SimState init_state(Rng& rng, InitialRule rule = InitialRule::FairCoin) const;

    /// Builds a state from explicit decisions, types assigned as in init_state.
    SimState make_state(const std::vector<std::uint8_t>& decisions) const;

    int zero_neighbors(const SimState& state, int agent) const;

    /// One time slot: a uniform agent dies and re-draws its decision.
    StepOutcome step(SimState& state, Rng& rng) const;

    /// Steps until absorption or max_steps. Samples every sample_every steps (0 disables).
    TrialResult run_trial(std::uint64_t seed, std::uint64_t max_steps, std::uint64_t sample_every = 0,
                          InitialRule rule = InitialRule::FairCoin) const;

private:
    const RegularGraph* graph_;
    TypeProfile profile_;
    GameParams params_;
    std::vector<int> type_sizes_;
    std::size_t stride_ = 0;
    std::vector<double> prob_zero_;
};

TrialResult run_trial(const RegularGraph& g, const TypeProfile& profile, const GameParams& params,
                      std::uint64_t seed, std::uint64_t max_steps, std::uint64_t sample_every = 0);

inline constexpr std::uint64_t kDefaultMaxSteps = 100000;

struct EnsembleOptions {
    int trials = 100;
    std::uint64_t base_seed = 1;
    std::uint64_t graph_seed = 1;  // base for per-trial graphs
    std::uint64_t max_steps = kDefaultMaxSteps;
    std::uint64_t sample_every = 0;
    InitialRule rule = InitialRule::FairCoin;
    /// When set, every trial runs on this graph instead of a freshly generated one.
    const RegularGraph* fixed_graph = nullptr;
};

struct EnsembleResult {
    double mean_final_x = 0.0;
    std::vector<TrialResult> results;  // ordered by trial index
    int trials = 0;

    friend bool operator==(const EnsembleResult&, const EnsembleResult&) = default;
};

std::uint64_t trial_seed(std::uint64_t base_seed, int trial);
std::uint64_t trial_graph_seed(std::uint64_t graph_seed, int trial);

/// Trials distributed over OpenMP threads. Bit-identical to run_ensemble_serial.
EnsembleResult run_ensemble(const TypeProfile& profile, const GameParams& params, const EnsembleOptions& options);

/// Reference implementation: one trial after another on the calling thread.
EnsembleResult run_ensemble_serial(const TypeProfile& profile, const GameParams& params,
                                   const EnsembleOptions& options);

/// Ensemble-average of x_total at multiples of sample_every up to max_steps;
/// absorbed trials hold their final value.
std::vector<std::pair<std::uint64_t, double>> mean_trajectory(const EnsembleResult& ensemble,
                                                              std::uint64_t sample_every,
                                                              std::uint64_t max_steps);

} // namespace evosocial

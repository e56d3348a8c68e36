#include "evosocial/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace evosocial {

int SimState::zeros() const { return std::accumulate(counts.begin(), counts.end(), 0); }

double SimState::x_total() const {
    return static_cast<double>(zeros()) / static_cast<double>(decisions.size());
}

std::vector<double> SimState::x_per_type() const {
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out[i] = static_cast<double>(counts[i]) / static_cast<double>(type_sizes[i]);
    }
    return out;
}

bool SimState::absorbed() const {
    const int z = zeros();
    return z == 0 || z == static_cast<int>(decisions.size());
}

std::vector<int> apportion_types(int n, const std::vector<double>& proportions) {
    std::vector<int> sizes(proportions.size());
    std::vector<double> remainders(proportions.size());
    int assigned = 0;
    for (std::size_t i = 0; i < proportions.size(); ++i) {
        const double exact = n * proportions[i];
        sizes[i] = static_cast<int>(std::floor(exact));
        remainders[i] = exact - sizes[i];
        assigned += sizes[i];
    }
    std::vector<std::size_t> order(proportions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t r = 0; assigned < n && r < order.size(); ++r, ++assigned) ++sizes[order[r]];
    if (assigned != n) throw ValidationError("type proportions cannot be apportioned to the population");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0) {
            std::ostringstream os;
            os << "type " << i + 1 << " (q = " << proportions[i] << ") receives no agents at N = " << n;
            throw ValidationError(os.str());
        }
    }
    return sizes;
}

DeathBirthProcess::DeathBirthProcess(const RegularGraph& graph, TypeProfile profile, GameParams params)
    : graph_(&graph), profile_(std::move(profile)), params_(params) {
    profile_.validate();
    params_.validate();
    if (graph.n() != params_.n_agents || graph.k() != params_.k) {
        std::ostringstream os;
        os << "graph has n = " << graph.n() << ", k = " << graph.k() << " but parameters ask for n = "
           << params_.n_agents << ", k = " << params_.k;
        throw ValidationError(os.str());
    }
    type_sizes_ = apportion_types(params_.n_agents, profile_.proportions);
    stride_ = static_cast<std::size_t>(params_.k) + 1;
    prob_zero_.resize(profile_.num_types() * stride_);
    for (std::size_t i = 0; i < profile_.num_types(); ++i) {
        for (int k0 = 0; k0 <= params_.k; ++k0) {
            const double w0 = k0 * fitness0(i, k0, profile_, params_);
            const double w1 = (params_.k - k0) * fitness1(i, k0, profile_, params_);
            prob_zero_[i * stride_ + static_cast<std::size_t>(k0)] = w0 / (w0 + w1);
        }
    }
}

SimState DeathBirthProcess::make_state(const std::vector<std::uint8_t>& decisions) const {
    if (static_cast<int>(decisions.size()) != params_.n_agents) {
        throw ValidationError("decision vector length must equal the population size");
    }
    SimState s;
    s.decisions = decisions;
    s.type_sizes = type_sizes_;
    s.counts.assign(type_sizes_.size(), 0);
    s.type_of.reserve(decisions.size());
    for (std::size_t i = 0; i < type_sizes_.size(); ++i) {
        for (int m = 0; m < type_sizes_[i]; ++m) s.type_of.push_back(static_cast<int>(i));
    }
    for (std::size_t n = 0; n < decisions.size(); ++n) {
        if (decisions[n] > 1) throw ValidationError("decisions must be 0 or 1");
        if (decisions[n] == 0) ++s.counts[static_cast<std::size_t>(s.type_of[n])];
    }
    return s;
}

SimState DeathBirthProcess::init_state(Rng& rng, InitialRule rule) const {
    std::vector<std::uint8_t> decisions(static_cast<std::size_t>(params_.n_agents));
    for (auto& d : decisions) {
        switch (rule) {
        case InitialRule::FairCoin: d = static_cast<std::uint8_t>(rng.next() >> 63); break;
        case InitialRule::AllZero: d = 0; break;
        case InitialRule::AllOne: d = 1; break;
        }
    }
    return make_state(decisions);
}

int DeathBirthProcess::zero_neighbors(const SimState& state, int agent) const {
    int k0 = 0;
    for (int m : graph_->neighbors(agent)) k0 += state.decisions[static_cast<std::size_t>(m)] == 0;
    return k0;
}

StepOutcome DeathBirthProcess::step(SimState& state, Rng& rng) const {
    StepOutcome out;
    out.agent = static_cast<int>(rng.below(static_cast<std::uint64_t>(params_.n_agents)));
    const auto idx = static_cast<std::size_t>(out.agent);
    out.before = state.decisions[idx];
    const int type = state.type_of[idx];
    const int k0 = zero_neighbors(state, out.agent);
    out.after = rng.uniform() < prob_zero(type, k0) ? 0 : 1;
    if (out.after != out.before) {
        state.decisions[idx] = out.after;
        state.counts[static_cast<std::size_t>(type)] += out.after == 0 ? 1 : -1;
    }
    ++state.step;
    return out;
}

TrialResult DeathBirthProcess::run_trial(std::uint64_t seed, std::uint64_t max_steps, std::uint64_t sample_every,
                                         InitialRule rule) const {
    if (max_steps < 1) throw ValidationError("max_steps must be at least 1");
    Rng rng(seed);
    SimState state = init_state(rng, rule);
    const int n = params_.n_agents;
    int zeros = state.zeros();

    TrialResult result;
    result.seed = seed;
    auto record = [&] { result.samples.push_back({state.step, state.x_total(), state.x_per_type()}); };
    if (sample_every > 0) record();

    while (state.step < max_steps && zeros != 0 && zeros != n) {
        const StepOutcome o = step(state, rng);
        zeros += static_cast<int>(o.before) - static_cast<int>(o.after);
        if (sample_every > 0 && state.step % sample_every == 0) record();
    }
    if (sample_every > 0 && result.samples.back().step != state.step) record();

    result.final_x = state.x_total();
    result.final_x_per_type = state.x_per_type();
    result.absorbed = zeros == 0 || zeros == n;
    result.steps_run = state.step;
    return result;
}

TrialResult run_trial(const RegularGraph& g, const TypeProfile& profile, const GameParams& params,
                      std::uint64_t seed, std::uint64_t max_steps, std::uint64_t sample_every) {
    return DeathBirthProcess(g, profile, params).run_trial(seed, max_steps, sample_every);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(trial), StreamTag::Dynamics);
}

std::uint64_t trial_graph_seed(std::uint64_t graph_seed, int trial) {
    return derive_seed(graph_seed, static_cast<std::uint64_t>(trial), StreamTag::Graph);
}

std::vector<std::pair<std::uint64_t, double>> mean_trajectory(const EnsembleResult& ensemble,
                                                              std::uint64_t sample_every,
                                                              std::uint64_t max_steps) {
    if (sample_every == 0) throw ValidationError("sample_every must be positive");
    std::vector<std::pair<std::uint64_t, double>> out;
    for (std::uint64_t s = 0; s <= max_steps; s += sample_every) out.emplace_back(s, 0.0);
    for (const TrialResult& r : ensemble.results) {
        std::size_t cursor = 0;
        for (auto& [step, sum] : out) {
            while (cursor + 1 < r.samples.size() && r.samples[cursor + 1].step <= step) ++cursor;
            sum += r.samples.empty() ? r.final_x : r.samples[cursor].x_total;
        }
    }
    for (auto& point : out) point.second /= static_cast<double>(ensemble.results.size());
    return out;
}

} // namespace evosocial

#include "evosocial/experiments.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace evosocial {

std::vector<double> default_grid() {
    std::vector<double> grid;
    for (int j = 2; j <= 18; ++j) grid.push_back(j / 20.0);
    return grid;
}

std::vector<double> SweepSpec::effective_grid() const { return grid.empty() ? default_grid() : grid; }

TypeProfile SweepSpec::profile_at(double swept_value) const {
    TypeProfile p = profile;
    p.beliefs.at(swept_index) = swept_value;
    return p;
}

void SweepSpec::validate() const {
    if (swept_index >= profile.num_types()) {
        std::ostringstream os;
        os << "swept_index " << swept_index << " is out of range for " << profile.num_types() << " types";
        throw ValidationError(os.str());
    }
    for (double v : effective_grid()) {
        if (!(v > 0.0 && v < 1.0)) throw ValidationError("sweep grid values must lie strictly inside (0, 1)");
    }
    profile_at(effective_grid().front()).validate();
    params.validate();
    if (trials < 1) throw ValidationError("trials must be at least 1");
    if (max_steps < 1) throw ValidationError("max_steps must be at least 1");
}

SweepSpec scenario(const std::string& name) {
    SweepSpec s;
    if (name == "two-type-i") {
        s.profile = {{0.2, 0.5}, {0.5, 0.5}};
        s.swept_index = 1;
    } else if (name == "two-type-ii") {
        s.profile = {{0.2, 0.5}, {0.3, 0.7}};
        s.swept_index = 1;
    } else if (name == "five-type-i") {
        s.profile = {{0.6, 0.7, 0.5, 0.4, 0.5}, {0.2, 0.2, 0.2, 0.2, 0.2}};
        s.swept_index = 4;
    } else if (name == "five-type-ii") {
        s.profile = {{0.6, 0.7, 0.5, 0.4, 0.5}, {0.2, 0.1, 0.1, 0.1, 0.5}};
        s.swept_index = 4;
    } else {
        throw ValidationError("unknown scenario '" + name + "'");
    }
    return s;
}

std::vector<std::string> scenario_names() { return {"two-type-i", "two-type-ii", "five-type-i", "five-type-ii"}; }

SweepSpec apply_json(SweepSpec s, const nlohmann::json& config) {
    if (!config.is_object()) throw ValidationError("configuration must be a JSON object");
    static const std::set<std::string> known = {
        "scenario", "beliefs", "proportions", "swept_index", "grid", "n_agents", "k", "alpha", "u",
        "trials", "seed", "graph_seed", "max_steps", "fixed_graph", "out"};
    for (const auto& item : config.items()) {
        if (!known.contains(item.key())) throw ValidationError("unknown configuration key '" + item.key() + "'");
    }
    try {
        // A named scenario is the starting point; explicit keys refine it.
        if (config.contains("scenario")) s = scenario(config.at("scenario").get<std::string>());
        if (config.contains("beliefs")) s.profile.beliefs = config.at("beliefs").get<std::vector<double>>();
        if (config.contains("proportions")) s.profile.proportions = config.at("proportions").get<std::vector<double>>();
        if (config.contains("swept_index")) s.swept_index = config.at("swept_index").get<std::size_t>();
        if (config.contains("grid")) s.grid = config.at("grid").get<std::vector<double>>();
        if (config.contains("n_agents")) s.params.n_agents = config.at("n_agents").get<int>();
        if (config.contains("k")) s.params.k = config.at("k").get<int>();
        if (config.contains("alpha")) s.params.alpha = config.at("alpha").get<double>();
        if (config.contains("u")) s.params.u = config.at("u").get<double>();
        if (config.contains("trials")) s.trials = config.at("trials").get<int>();
        if (config.contains("seed")) s.seed = config.at("seed").get<std::uint64_t>();
        if (config.contains("graph_seed")) s.graph_seed = config.at("graph_seed").get<std::uint64_t>();
        if (config.contains("max_steps")) s.max_steps = config.at("max_steps").get<std::uint64_t>();
        if (config.contains("fixed_graph")) s.fixed_graph = config.at("fixed_graph").get<bool>();
        if (config.contains("out")) s.out = config.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("configuration: ") + e.what());
    }
    return s;
}

SweepSpec load_spec_file(const std::string& path, SweepSpec base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open configuration file '" + path + "'");
    nlohmann::json config;
    try {
        config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("configuration file '" + path + "': " + e.what());
    }
    return apply_json(std::move(base), config);
}

Verdict simulated_decision(double mean_x) { return mean_x >= 0.5 ? Verdict::Zero : Verdict::One; }

AgreementSummary agreement(const std::vector<SweepRow>& rows, double band) {
    AgreementSummary s;
    for (const SweepRow& r : rows) {
        if (std::abs(r.lambda) <= band || r.centralized == Verdict::Indifferent) continue;
        ++s.considered;
        if (simulated_decision(r.simulated_mean_x) == r.centralized) ++s.agreeing;
    }
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepProgress& progress) {
    spec.validate();
    const std::vector<double> grid = spec.effective_grid();

    RegularGraph shared;
    EnsembleOptions options;
    options.trials = spec.trials;
    options.base_seed = spec.seed;
    options.graph_seed = spec.graph_seed;
    options.max_steps = spec.max_steps;
    if (spec.fixed_graph) {
        shared = generate_regular(spec.params.n_agents, spec.params.k, trial_graph_seed(spec.graph_seed, 0));
        options.fixed_graph = &shared;
    }

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        const TypeProfile profile = spec.profile_at(value);
        SweepRow row;
        row.swept_value = value;
        row.lambda = lambda_discriminant(profile);
        row.centralized = verdict_from_lambda(row.lambda);
        const EssReport ess = classify_ess(profile, spec.params);
        row.predicted = ess.predicted_limit_from_half;
        row.ess_set = ess.ess_set();

        const bool consistent = (row.centralized == Verdict::One && row.predicted == Limit::Zero) ||
                                (row.centralized == Verdict::Zero && row.predicted == Limit::One) ||
                                (row.centralized == Verdict::Indifferent && row.predicted == Limit::Indeterminate);
        if (!consistent) throw std::logic_error("theorem prediction disagrees with the centralized decision");

        const std::vector<double> half(profile.num_types(), 0.5);
        row.meanfield_x = integrate(profile, spec.params, half).back().state.x_total;

        const EnsembleResult ensemble = run_ensemble(profile, spec.params, options);
        row.simulated_mean_x = ensemble.mean_final_x;
        row.trials = ensemble.trials;
        rows.push_back(std::move(row));
        if (progress) progress(rows.size(), grid.size(), rows.back());
    }
    return rows;
}

} // namespace evosocial

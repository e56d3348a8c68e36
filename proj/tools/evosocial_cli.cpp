// Command-line front end: detect, ess, meanfield, simulate, sweep, graph.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "evosocial/experiments.hpp"
#include "evosocial/network.hpp"
#include "evosocial/report.hpp"

using namespace evosocial;

namespace {

struct Flags {
    std::string config;
    std::string scenario;
    std::vector<double> beliefs;
    std::vector<double> proportions;
    std::size_t swept_index = 0;
    std::vector<double> grid;
    std::uint64_t seed = 0;
    std::uint64_t graph_seed = 0;
    int trials = 0;
    int n = 0;
    int k = 0;
    double alpha = 0.0;
    double u = 0.0;
    std::uint64_t max_steps = 0;
    std::string out;

    // Per-subcommand extras.
    double t_end = 0.0;
    int samples = 201;
    std::vector<double> x0;
    std::uint64_t sample_every = 0;
    bool fixed_graph = false;
    std::string edge_list;
    bool dump = false;
};

struct Options {
    CLI::Option* config;
    CLI::Option* scenario;
    CLI::Option* beliefs;
    CLI::Option* proportions;
    CLI::Option* swept_index;
    CLI::Option* grid;
    CLI::Option* seed;
    CLI::Option* graph_seed;
    CLI::Option* trials;
    CLI::Option* n;
    CLI::Option* k;
    CLI::Option* alpha;
    CLI::Option* u;
    CLI::Option* max_steps;
    CLI::Option* out;
    CLI::Option* fixed_graph;
};

// Defaults, then scenario, then config file, then individual flags.
SweepSpec resolve(const Flags& f, const Options& o) {
    SweepSpec spec;
    if (*o.scenario) spec = scenario(f.scenario);
    if (*o.config) spec = load_spec_file(f.config, spec);
    if (*o.beliefs) spec.profile.beliefs = f.beliefs;
    if (*o.proportions) spec.profile.proportions = f.proportions;
    if (*o.swept_index) spec.swept_index = f.swept_index;
    if (*o.grid) spec.grid = f.grid;
    if (*o.seed) spec.seed = f.seed;
    if (*o.graph_seed) spec.graph_seed = f.graph_seed;
    if (*o.trials) spec.trials = f.trials;
    if (*o.n) spec.params.n_agents = f.n;
    if (*o.k) spec.params.k = f.k;
    if (*o.alpha) spec.params.alpha = f.alpha;
    if (*o.u) spec.params.u = f.u;
    if (*o.max_steps) spec.max_steps = f.max_steps;
    if (*o.out) spec.out = f.out;
    if (*o.fixed_graph) spec.fixed_graph = f.fixed_graph;
    return spec;
}

// Writes through `fn` to spec.out, or to stdout when no path was given.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    fn(file);
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void cmd_detect(const SweepSpec& spec) {
    const double lambda = lambda_discriminant(spec.profile);
    std::cout << "lambda=" << format_number(lambda) << '\n'
              << "decision=" << to_string(verdict_from_lambda(lambda)) << '\n';
}

void cmd_ess(const SweepSpec& spec) {
    const EssReport r = classify_ess(spec.profile, spec.params);
    std::cout << "lambda=" << format_number(r.lambda) << '\n'
              << "threshold=" << format_number(r.threshold) << '\n'
              << "ess_set=" << format_ess_set(r.ess_set()) << '\n'
              << "interior_point=" << (r.interior ? format_number(*r.interior) : std::string("none")) << '\n'
              << "predicted_limit_from_half=" << to_string(r.predicted_limit_from_half) << '\n'
              << "on_boundary=" << (r.on_boundary ? "true" : "false") << '\n';
}

void cmd_meanfield(const SweepSpec& spec, const Flags& f) {
    std::vector<double> x0 = f.x0;
    if (x0.empty()) x0.assign(spec.profile.num_types(), 0.5);
    IntegrationOptions opts;
    opts.t_end = f.t_end;
    opts.samples = f.samples;
    const Trajectory traj = integrate(spec.profile, spec.params, x0, opts);
    with_output(spec.out, [&](std::ostream& os) { write_meanfield_csv(os, traj); });
}

void cmd_simulate(const SweepSpec& spec, const Flags& f) {
    spec.profile.validate();
    spec.params.validate();
    EnsembleOptions opts;
    opts.trials = spec.trials;
    opts.base_seed = spec.seed;
    opts.graph_seed = spec.graph_seed;
    opts.max_steps = spec.max_steps;
    opts.sample_every = f.sample_every;
    std::optional<RegularGraph> shared;
    if (spec.fixed_graph) {
        shared = generate_regular(spec.params.n_agents, spec.params.k, trial_graph_seed(spec.graph_seed, 0));
        opts.fixed_graph = &*shared;
    }
    const EnsembleResult result = run_ensemble(spec.profile, spec.params, opts);
    if (!spec.out.empty()) {
        with_output(spec.out, [&](std::ostream& os) { write_simulation_csv(os, result); });
    }
    write_ensemble_summary_header(std::cout);
    write_ensemble_summary_row(std::cout, spec.profile, spec.params, result);
}

void cmd_sweep(const SweepSpec& spec) {
    const auto rows = run_sweep(spec, [](std::size_t done, std::size_t total, const SweepRow& row) {
        std::cerr << "[" << done << "/" << total << "] value " << format_number(row.swept_value) << " -> "
                  << format_number(row.simulated_mean_x) << '\n';
    });
    if (spec.out.empty()) {
        write_sweep_csv(std::cout, rows);
        write_sweep_summary(std::cerr, rows);
    } else {
        emit_report(rows, spec.out, std::cout);
    }
}

int cmd_graph(const SweepSpec& spec, const Flags& f) {
    RegularGraph g;
    if (!f.edge_list.empty()) {
        std::ifstream in(f.edge_list);
        if (!in) throw std::runtime_error("cannot open '" + f.edge_list + "'");
        g = read_edge_list(in);
    } else {
        g = generate_regular(spec.params.n_agents, spec.params.k, spec.seed);
    }
    const auto violations = validate(g);
    if (f.dump) {
        with_output(spec.out, [&](std::ostream& os) { write_edge_list(os, g); });
    }
    std::ostream& meta = f.dump && spec.out.empty() ? std::cerr : std::cout;
    meta << "n=" << g.n() << '\n'
         << "k=" << g.k() << '\n'
         << "edges=" << g.edges().size() << '\n'
         << "connected=" << (g.is_connected() ? "true" : "false") << '\n'
         << "valid=" << (violations.empty() ? "true" : "false") << '\n';
    for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
    return violations.empty() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary-game social learning on k-regular networks"};
    app.require_subcommand(1);
    Flags f;
    Options o{};
    o.config = app.add_option("--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
    o.scenario = app.add_option("--scenario", f.scenario, "named setup")->check(CLI::IsMember(scenario_names()));
    o.beliefs = app.add_option("--beliefs", f.beliefs, "per-type beliefs p_i")->delimiter(',');
    o.proportions = app.add_option("--proportions", f.proportions, "per-type shares q_i")->delimiter(',');
    o.swept_index = app.add_option("--swept-index", f.swept_index, "0-based index of the swept belief");
    o.grid = app.add_option("--grid", f.grid, "sweep values")->delimiter(',');
    o.seed = app.add_option("--seed", f.seed, "base seed");
    o.graph_seed = app.add_option("--graph-seed", f.graph_seed, "base seed for per-trial graphs");
    o.trials = app.add_option("--trials", f.trials, "independent trials");
    o.n = app.add_option("--n", f.n, "number of agents");
    o.k = app.add_option("--k", f.k, "degree");
    o.alpha = app.add_option("--alpha", f.alpha, "selection strength");
    o.u = app.add_option("--u", f.u, "consensus reward");
    o.max_steps = app.add_option("--max-steps", f.max_steps, "time slots per trial");
    o.out = app.add_option("--out", f.out, "output path");
    o.fixed_graph = app.add_flag("--fixed-graph", f.fixed_graph, "one graph shared by all trials");

    auto* detect = app.add_subcommand("detect", "discriminant and centralized decision");
    auto* ess = app.add_subcommand("ess", "equilibria and ESS classification");
    auto* meanfield = app.add_subcommand("meanfield", "integrate the mean-field dynamics to CSV");
    meanfield->add_option("--t-end", f.t_end, "integration horizon (default scales with N / alpha)");
    meanfield->add_option("--samples", f.samples, "output rows");
    meanfield->add_option("--x0", f.x0, "initial per-type fractions")->delimiter(',');
    auto* simulate = app.add_subcommand("simulate", "run one ensemble");
    simulate->add_option("--sample-every", f.sample_every, "trajectory sampling interval in steps");
    auto* sweep = app.add_subcommand("sweep", "sweep one belief and compare against the detector");
    auto* graph = app.add_subcommand("graph", "generate, validate or dump a regular graph");
    graph->add_option("--edge-list", f.edge_list, "validate this edge-list file instead of generating");
    graph->add_flag("--dump", f.dump, "write the edge list");
    for (auto* sub : {detect, ess, meanfield, simulate, sweep, graph}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const SweepSpec spec = resolve(f, o);
        if (*detect) cmd_detect(spec);
        if (*ess) cmd_ess(spec);
        if (*meanfield) cmd_meanfield(spec, f);
        if (*simulate) cmd_simulate(spec, f);
        if (*sweep) cmd_sweep(spec);
        if (*graph) return cmd_graph(spec, f);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

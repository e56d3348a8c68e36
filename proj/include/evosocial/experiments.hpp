#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evosocial/core_model.hpp"
#include "evosocial/meanfield.hpp"
#include "evosocial/simulator.hpp"

namespace evosocial {

/// One-belief sweep: every profile entry is fixed except beliefs[swept_index],
/// which takes each grid value in turn.
struct SweepSpec {
    TypeProfile profile{{0.2, 0.5}, {0.5, 0.5}};
    std::size_t swept_index = 1;
    std::vector<double> grid;  // empty selects default_grid()
    GameParams params;
    int trials = 100;
    std::uint64_t seed = 1;
    std::uint64_t graph_seed = 2;
    std::uint64_t max_steps = kDefaultMaxSteps;
    bool fixed_graph = false;
    std::string out;

    std::vector<double> effective_grid() const;
    TypeProfile profile_at(double swept_value) const;
    void validate() const;
};

/// {0.10, 0.15, ..., 0.90}.
std::vector<double> default_grid();

/// Named reproductions of the evaluation setups: "two-type-i", "two-type-ii",
/// "five-type-i", "five-type-ii".
SweepSpec scenario(const std::string& name);
std::vector<std::string> scenario_names();

/// Reads SweepSpec fields from a JSON object on top of `base`. Unknown keys are rejected.
SweepSpec apply_json(SweepSpec base, const nlohmann::json& config);
SweepSpec load_spec_file(const std::string& path, SweepSpec base = {});

struct SweepRow {
    double swept_value = 0.0;
    double lambda = 0.0;
    Verdict centralized = Verdict::Indifferent;
    Limit predicted = Limit::Indeterminate;
    std::vector<int> ess_set;
    double meanfield_x = 0.0;
    double simulated_mean_x = 0.0;
    int trials = 0;
};

using SweepProgress = std::function<void(std::size_t done, std::size_t total, const SweepRow&)>;

/// Rows are in grid order. Throws std::logic_error if the theorem prediction
/// and the centralized decision ever disagree for a nonzero discriminant.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepProgress& progress = {});

/// Decision implied by a decision-0 share: at least one half means decision 0.
Verdict simulated_decision(double mean_x);

inline constexpr double kNearThresholdBand = 0.1;

struct AgreementSummary {
    int considered = 0;  // rows with |lambda| > band
    int agreeing = 0;
    double rate() const { return considered == 0 ? 1.0 : static_cast<double>(agreeing) / considered; }
};

AgreementSummary agreement(const std::vector<SweepRow>& rows, double band = kNearThresholdBand);

} // namespace evosocial

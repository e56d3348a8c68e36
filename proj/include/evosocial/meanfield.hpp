#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "evosocial/core_model.hpp"

namespace evosocial {

/// Decision-0 share within each type, plus the population-weighted total.
struct MeanFieldState {
    std::vector<double> x_per_type;
    double x_total = 0.0;

    static MeanFieldState from_types(std::vector<double> x_per_type, const TypeProfile& profile);
};

/// Rate of x_i under the mean-field dynamics (continuous time, one unit per time slot).
double dxdt_type(std::size_t type_index, const MeanFieldState& state, const TypeProfile& profile,
                 const GameParams& params);

/// Rate of the aggregate share x. Depends on the profile only through lambda.
double dxdt_total(double x, const TypeProfile& profile, const GameParams& params);
double dxdt_total_lambda(double x, double lambda, const GameParams& params);

/// Interior rest point lambda / (2u(1 - 2/k)) + 1/2, or nullopt when u = 0 or k = 2.
std::optional<double> interior_point(double lambda, const GameParams& params);

struct EquilibriaResult {
    std::vector<double> points;  // 0, 1, then the interior point when it exists
    bool degenerate = false;     // interior point undefined (u = 0 or k = 2)
};

EquilibriaResult equilibria(const TypeProfile& profile, const GameParams& params);

struct JacobianEntries {
    double dxi_dxi = 0.0;
    double dxi_dx = 0.0;
    double dx_dxi = 0.0;
    double dx_dx = 0.0;
};

JacobianEntries jacobian_entries(double x, std::size_t type_index, const TypeProfile& profile,
                                 const GameParams& params);

/// Closed-form d(xdot)/dx as a function of lambda only.
double dx_dx_lambda(double x, double lambda, const GameParams& params);

enum class Limit { Zero, One, Indeterminate };

const char* to_string(Limit l);

struct EssReport {
    bool zero_is_ess = false;
    bool one_is_ess = false;
    std::optional<double> interior;  // present when finite
    Limit predicted_limit_from_half = Limit::Indeterminate;
    double lambda = 0.0;
    double threshold = 0.0;          // u - 2u/k
    bool on_boundary = false;        // |lambda| equals the threshold; left unclassified

    std::vector<int> ess_set() const;
};

/// Relative tolerance used to decide |lambda| == threshold.
inline constexpr double kBoundaryTolerance = 1e-12;

EssReport classify_ess(const TypeProfile& profile, const GameParams& params);

struct TrajectorySample {
    double t = 0.0;
    MeanFieldState state;
};

using Trajectory = std::vector<TrajectorySample>;

struct IntegrationOptions {
    double t_end = 0.0;        // <= 0 selects default_horizon(params)
    int samples = 201;         // evenly spaced output times including 0 and t_end
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
};

/// Horizon long enough for the dynamics from x = 0.5 to settle: scales with N / alpha.
double default_horizon(const GameParams& params);

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, TrajectorySample last_valid)
        : std::runtime_error(what), last_valid_(std::move(last_valid)) {}
    const TrajectorySample& last_valid() const { return last_valid_; }

private:
    TrajectorySample last_valid_;
};

/// Integrates the per-type system with adaptive Dormand-Prince stepping.
Trajectory integrate(const TypeProfile& profile, const GameParams& params, const std::vector<double>& x0,
                     const IntegrationOptions& options = {});

} // namespace evosocial

#include "evosocial/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace evosocial {

namespace {

double aggregate(const std::vector<double>& x_per_type, const TypeProfile& profile) {
    double x = 0.0;
    for (std::size_t i = 0; i < x_per_type.size(); ++i) x += profile.proportions[i] * x_per_type[i];
    return x;
}

// The braces term of the dynamics with the belief term g = ln((1-p)/p) or lambda:
// 2u[(-k + 3 - 2/k) x - 1 + 1/k] + (g + u)(k - 1).
double braces(double x, double g, const GameParams& params) {
    const double k = params.k;
    const double u = params.u;
    return 2.0 * u * ((-k + 3.0 - 2.0 / k) * x - 1.0 + 1.0 / k) + (g + u) * (k - 1.0);
}

// d/dx of x(x-1) * braces(x, g).
double braces_product_slope(double x, double g, const GameParams& params) {
    const double k = params.k;
    const double u = params.u;
    const double bracket = -2.0 * u * ((k - 3.0 + 2.0 / k) * x + 1.0 - 1.0 / k) + (g + u) * (k - 1.0);
    return (2.0 * x - 1.0) * bracket + 2.0 * u * x * (x - 1.0) * (-k + 3.0 - 2.0 / k);
}

} // namespace

MeanFieldState MeanFieldState::from_types(std::vector<double> x_per_type, const TypeProfile& profile) {
    if (x_per_type.size() != profile.num_types()) {
        throw ValidationError("state must carry one fraction per type");
    }
    for (double xi : x_per_type) {
        if (!(xi >= 0.0 && xi <= 1.0)) throw ValidationError("per-type fractions must lie in [0, 1]");
    }
    MeanFieldState s;
    s.x_total = aggregate(x_per_type, profile);
    s.x_per_type = std::move(x_per_type);
    return s;
}

double dxdt_type(std::size_t type_index, const MeanFieldState& state, const TypeProfile& profile,
                 const GameParams& params) {
    const double n = params.n_agents;
    const double x = state.x_total;
    const double xi = state.x_per_type.at(type_index);
    return x / n - xi / n + params.alpha / n * x * (x - 1.0) * braces(x, log_odds(type_index, profile), params);
}

double dxdt_total_lambda(double x, double lambda, const GameParams& params) {
    return params.alpha / params.n_agents * x * (x - 1.0) * braces(x, lambda, params);
}

double dxdt_total(double x, const TypeProfile& profile, const GameParams& params) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("population fraction x must lie in [0, 1]");
    return dxdt_total_lambda(x, lambda_discriminant(profile), params);
}

std::optional<double> interior_point(double lambda, const GameParams& params) {
    if (params.u == 0.0 || params.k == 2) return std::nullopt;
    return lambda / (2.0 * params.u * (1.0 - 2.0 / params.k)) + 0.5;
}

EquilibriaResult equilibria(const TypeProfile& profile, const GameParams& params) {
    params.validate();
    EquilibriaResult out;
    out.points = {0.0, 1.0};
    if (auto interior = interior_point(lambda_discriminant(profile), params)) {
        out.points.push_back(*interior);
    } else {
        out.degenerate = true;
    }
    return out;
}

double dx_dx_lambda(double x, double lambda, const GameParams& params) {
    return params.alpha / params.n_agents * braces_product_slope(x, lambda, params);
}

JacobianEntries jacobian_entries(double x, std::size_t type_index, const TypeProfile& profile,
                                 const GameParams& params) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("population fraction x must lie in [0, 1]");
    const double n = params.n_agents;
    JacobianEntries j;
    j.dxi_dxi = -1.0 / n;
    j.dx_dxi = 0.0;
    j.dxi_dx = 1.0 / n + params.alpha / n * braces_product_slope(x, log_odds(type_index, profile), params);
    j.dx_dx = dx_dx_lambda(x, lambda_discriminant(profile), params);
    return j;
}

const char* to_string(Limit l) {
    switch (l) {
    case Limit::Zero: return "0";
    case Limit::One: return "1";
    case Limit::Indeterminate: return "indeterminate";
    }
    return "?";
}

std::vector<int> EssReport::ess_set() const {
    std::vector<int> out;
    if (zero_is_ess) out.push_back(0);
    if (one_is_ess) out.push_back(1);
    return out;
}

EssReport classify_ess(const TypeProfile& profile, const GameParams& params) {
    params.validate();
    EssReport r;
    r.lambda = lambda_discriminant(profile);
    r.threshold = params.u - 2.0 * params.u / params.k;
    r.interior = interior_point(r.lambda, params);
    r.on_boundary = std::abs(std::abs(r.lambda) - r.threshold) <= kBoundaryTolerance * std::max(1.0, r.threshold);
    // 0 is stable iff d(xdot)/dx < 0 at x = 0, i.e. lambda > -threshold; symmetric for 1.
    r.zero_is_ess = r.lambda > -r.threshold && !(r.on_boundary && r.lambda < 0.0);
    r.one_is_ess = r.lambda < r.threshold && !(r.on_boundary && r.lambda > 0.0);
    switch (verdict_from_lambda(r.lambda)) {
    case Verdict::One: r.predicted_limit_from_half = Limit::Zero; break;
    case Verdict::Zero: r.predicted_limit_from_half = Limit::One; break;
    case Verdict::Indifferent: r.predicted_limit_from_half = Limit::Indeterminate; break;
    }
    return r;
}

double default_horizon(const GameParams& params) {
    return 500.0 * params.n_agents / params.alpha;
}

Trajectory integrate(const TypeProfile& profile, const GameParams& params, const std::vector<double>& x0,
                     const IntegrationOptions& options) {
    namespace odeint = boost::numeric::odeint;
    using state_type = std::vector<double>;

    profile.validate();
    params.validate();
    const MeanFieldState initial = MeanFieldState::from_types(x0, profile);
    const double t_end = options.t_end > 0.0 ? options.t_end : default_horizon(params);
    if (options.samples < 2) throw ValidationError("integration needs at least two output samples");

    const std::size_t types = profile.num_types();
    std::vector<double> belief_terms(types);
    for (std::size_t i = 0; i < types; ++i) belief_terms[i] = log_odds(i, profile);
    const double n = params.n_agents;

    auto system = [&](const state_type& xs, state_type& dxs, double /*t*/) {
        const double x = aggregate(xs, profile);
        const double common = params.alpha / n * x * (x - 1.0);
        for (std::size_t i = 0; i < types; ++i) {
            dxs[i] = (x - xs[i]) / n + common * braces(x, belief_terms[i], params);
        }
    };

    std::vector<double> times(static_cast<std::size_t>(options.samples));
    for (std::size_t s = 0; s < times.size(); ++s) {
        times[s] = t_end * static_cast<double>(s) / static_cast<double>(times.size() - 1);
    }

    Trajectory out;
    out.reserve(times.size());
    auto observer = [&](const state_type& xs, double t) {
        for (double v : xs) {
            if (!std::isfinite(v)) throw std::runtime_error("non-finite state");
        }
        TrajectorySample sample;
        sample.t = t;
        sample.state.x_per_type = xs;
        sample.state.x_total = aggregate(xs, profile);
        out.push_back(std::move(sample));
    };

    state_type state = initial.x_per_type;
    auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<state_type>());
    const double dt0 = std::min(1.0, t_end / options.samples);
    try {
        odeint::integrate_times(stepper, system, state, times.begin(), times.end(), dt0, observer,
                                odeint::max_step_checker(1000000));
    } catch (const std::exception& e) {
        TrajectorySample last;
        if (out.empty()) {
            last.state = initial;
        } else {
            last = out.back();
        }
        std::ostringstream os;
        os << "mean-field integration failed after t = " << last.t << ": " << e.what();
        throw IntegrationError(os.str(), std::move(last));
    }
    return out;
}

} // namespace evosocial

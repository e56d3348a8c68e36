#include "evosocial/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace evosocial {

namespace {

void check_type_index(std::size_t i, const TypeProfile& profile) {
    if (i >= profile.num_types()) {
        std::ostringstream os;
        os << "type index " << i << " out of range (profile has " << profile.num_types() << " types)";
        throw DomainError(os.str());
    }
}

void check_k0(int k0, const GameParams& params) {
    if (k0 < 0 || k0 > params.k) {
        std::ostringstream os;
        os << "k0 = " << k0 << " outside [0, " << params.k << "]";
        throw DomainError(os.str());
    }
}

} // namespace

void TypeProfile::validate() const {
    if (beliefs.empty()) throw ValidationError("profile must contain at least one type");
    if (beliefs.size() != proportions.size()) {
        throw ValidationError("beliefs and proportions must have equal length");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < beliefs.size(); ++i) {
        const double p = beliefs[i];
        if (!(p > 0.0 && p < 1.0)) {
            std::ostringstream os;
            os << "belief p_" << i + 1 << " = " << p << " must lie strictly inside (0, 1)";
            throw ValidationError(os.str());
        }
        const double q = proportions[i];
        if (!(q > 0.0) || !std::isfinite(q)) {
            std::ostringstream os;
            os << "proportion q_" << i + 1 << " = " << q << " must be positive";
            throw ValidationError(os.str());
        }
        total += q;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "proportions sum to " << total << ", expected 1";
        throw ValidationError(os.str());
    }
}

TypeProfile TypeProfile::mirrored() const {
    TypeProfile out = *this;
    for (double& p : out.beliefs) p = 1.0 - p;
    return out;
}

void GameParams::validate() const {
    if (k < 2) throw ValidationError("degree k must be at least 2");
    if (n_agents < k + 1) throw ValidationError("population size must be at least k + 1");
    if ((static_cast<long long>(n_agents) * k) % 2 != 0) {
        throw ValidationError("n_agents * k must be even for a k-regular graph to exist");
    }
    if (!(u >= 0.0) || !std::isfinite(u)) throw ValidationError("consensus reward u must be nonnegative");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("selection strength alpha must lie in (0, 1)");
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Zero: return "0";
    case Verdict::One: return "1";
    case Verdict::Indifferent: return "indifferent";
    }
    return "?";
}

double log_odds(std::size_t type_index, const TypeProfile& profile) {
    check_type_index(type_index, profile);
    const double p = profile.beliefs[type_index];
    return std::log((1.0 - p) / p);
}

double lambda_discriminant(const TypeProfile& profile) {
    profile.validate();
    double lambda = 0.0;
    for (std::size_t i = 0; i < profile.num_types(); ++i) {
        lambda += profile.proportions[i] * log_odds(i, profile);
    }
    return lambda;
}

Verdict verdict_from_lambda(double lambda) {
    if (std::abs(lambda) <= kTieTolerance) return Verdict::Indifferent;
    return lambda > 0.0 ? Verdict::One : Verdict::Zero;
}

Verdict centralized_decide(const TypeProfile& profile) {
    return verdict_from_lambda(lambda_discriminant(profile));
}

double fitness0(std::size_t type_index, int k0, const TypeProfile& profile, const GameParams& params) {
    check_type_index(type_index, profile);
    check_k0(k0, params);
    const double log_q = std::log(1.0 - profile.beliefs[type_index]);
    const double utility = k0 * (-log_q + params.u) - (params.k - k0) * log_q;
    return 1.0 - params.alpha + params.alpha * utility;
}

double fitness1(std::size_t type_index, int k0, const TypeProfile& profile, const GameParams& params) {
    check_type_index(type_index, profile);
    check_k0(k0, params);
    const double log_p = std::log(profile.beliefs[type_index]);
    const double utility = -k0 * log_p + (params.k - k0) * (-log_p + params.u);
    return 1.0 - params.alpha + params.alpha * utility;
}

double transition_prob_exact(std::size_t type_index, int k0, const TypeProfile& profile,
                             const GameParams& params) {
    const double w0 = k0 * fitness0(type_index, k0, profile, params);
    const double w1 = (params.k - k0) * fitness1(type_index, k0, profile, params);
    return w1 / (w0 + w1);
}

double transition_prob_firstorder(std::size_t type_index, int k0, const TypeProfile& profile,
                                  const GameParams& params) {
    check_k0(k0, params);
    const double k = params.k;
    const double r = k0 / k;
    const double bracket = (log_odds(type_index, profile) + params.u) * r - 2.0 * params.u * r * r;
    return (k - k0) / k + params.alpha * (k - k0) * bracket;
}

double expected_transition(std::size_t type_index, double x, const TypeProfile& profile,
                           const GameParams& params) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("population fraction x must lie in [0, 1]");
    const double k = params.k;
    const double a = params.alpha;
    const double u = params.u;
    const double selection = (log_odds(type_index, profile) + u) * (k - 1.0) * (x - x * x);
    const double consensus =
        (-k + 3.0 - 2.0 / k) * x * x * x + (k - 4.0 + 3.0 / k) * x * x + (1.0 - 1.0 / k) * x;
    return 1.0 - x + a * selection - 2.0 * u * a * consensus;
}

double binomial_pmf(int k, int k0, double x) {
    if (k < 0 || k0 < 0 || k0 > k) throw DomainError("binomial_pmf requires 0 <= k0 <= k");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binomial_pmf requires x in [0, 1]");
    // Running product stays an exact integer for the degrees used here (k < 60).
    double choose = 1.0;
    const int m = std::min(k0, k - k0);
    for (int j = 1; j <= m; ++j) choose = choose * (k - m + j) / j;
    return choose * std::pow(x, k0) * std::pow(1.0 - x, k - k0);
}

} // namespace evosocial

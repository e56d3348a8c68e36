#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace evosocial {

/// Thrown when a profile, parameter set or configuration violates its invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an argument lies outside the domain of a formula (k0 > k, x > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Agent types of the population: private belief Pr(theta = 0 | signal) and
/// population share of each type.
struct TypeProfile {
    std::vector<double> beliefs;
    std::vector<double> proportions;

    std::size_t num_types() const { return beliefs.size(); }

    /// Throws ValidationError describing the first violated invariant.
    void validate() const;

    /// Profile with every belief p replaced by 1 - p. Negates the discriminant.
    TypeProfile mirrored() const;
};

struct GameParams {
    int k = 20;          // degree of every agent
    double u = 0.5;      // consensus reward
    double alpha = 0.05; // selection strength
    int n_agents = 1000;

    void validate() const;
};

enum class Decision : int { Zero = 0, One = 1 };

/// Outcome of the centralized threshold test. Indifferent when |lambda| is
/// within kTieTolerance.
enum class Verdict { Zero, One, Indifferent };

inline constexpr double kTieTolerance = 1e-12;

const char* to_string(Verdict v);

/// Sum of q_i ln((1 - p_i) / p_i). Positive values favour decision 1.
double lambda_discriminant(const TypeProfile& profile);

Verdict centralized_decide(const TypeProfile& profile);
Verdict verdict_from_lambda(double lambda);

/// Fitness of a type-i agent holding decision 0 with k0 decision-0 neighbours:
/// 1 - alpha + alpha [k0 (-ln(1 - p_i) + u) - (k - k0) ln(1 - p_i)].
double fitness0(std::size_t type_index, int k0, const TypeProfile& profile, const GameParams& params);

/// Fitness of a type-i agent holding decision 1 with k0 decision-0 neighbours:
/// 1 - alpha + alpha [-k0 ln p_i + (k - k0)(-ln p_i + u)].
double fitness1(std::size_t type_index, int k0, const TypeProfile& profile, const GameParams& params);

/// Probability that a type-i agent selected for death re-adopts decision 1,
/// (k - k0) pi1 / (k0 pi0 + (k - k0) pi1). This is the rule the simulator runs.
double transition_prob_exact(std::size_t type_index, int k0, const TypeProfile& profile,
                             const GameParams& params);

/// First-order expansion of transition_prob_exact in alpha. Not clamped to [0, 1].
double transition_prob_firstorder(std::size_t type_index, int k0, const TypeProfile& profile,
                                  const GameParams& params);

/// Closed-form expectation of transition_prob_firstorder over k0 ~ Binom(k, x).
double expected_transition(std::size_t type_index, double x, const TypeProfile& profile,
                           const GameParams& params);

double binomial_pmf(int k, int k0, double x);

/// ln((1 - p_i) / p_i) for one type.
double log_odds(std::size_t type_index, const TypeProfile& profile);

} // namespace evosocial

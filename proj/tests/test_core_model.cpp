#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "evosocial/core_model.hpp"
#include "oracles.hpp"

using namespace evosocial;

namespace {

GameParams evaluation_params() { return GameParams{20, 0.5, 0.05, 1000}; }

TypeProfile single(double p) { return TypeProfile{{p}, {1.0}}; }

} // namespace

TEST_CASE("profile validation") {
    CHECK_NOTHROW(TypeProfile({0.2, 0.6}, {0.5, 0.5}).validate());
    CHECK_THROWS_AS(TypeProfile({}, {}).validate(), ValidationError);
    CHECK_THROWS_AS(TypeProfile({0.2}, {0.5, 0.5}).validate(), ValidationError);
    CHECK_THROWS_AS(TypeProfile({0.0, 0.5}, {0.5, 0.5}).validate(), ValidationError);
    CHECK_THROWS_AS(TypeProfile({1.0}, {1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(TypeProfile({0.3, 0.5}, {0.0, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(TypeProfile({0.3, 0.5}, {0.5, 0.6}).validate(), ValidationError);
    CHECK_NOTHROW(TypeProfile({0.3, 0.5, 0.5}, {0.2, 0.3, 0.5}).validate());
}

TEST_CASE("game parameter validation") {
    CHECK_NOTHROW(evaluation_params().validate());
    CHECK_THROWS_AS((GameParams{1, 0.5, 0.05, 10}).validate(), ValidationError);
    CHECK_THROWS_AS((GameParams{4, 0.5, 0.05, 4}).validate(), ValidationError);
    CHECK_THROWS_AS((GameParams{3, 0.5, 0.05, 5}).validate(), ValidationError);
    CHECK_THROWS_AS((GameParams{4, -0.1, 0.05, 10}).validate(), ValidationError);
    CHECK_THROWS_AS((GameParams{4, 0.5, 0.0, 10}).validate(), ValidationError);
    CHECK_THROWS_AS((GameParams{4, 0.5, 1.0, 10}).validate(), ValidationError);
}

TEST_CASE("lambda discriminant") {
    CHECK(lambda_discriminant(single(0.5)) == 0.0);
    CHECK(lambda_discriminant({{0.2, 0.8}, {0.5, 0.5}}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lambda_discriminant({{0.2, 0.6}, {0.5, 0.5}}) == doctest::Approx(0.4904146265058631).epsilon(1e-14));
    CHECK_THROWS_AS(lambda_discriminant({{0.2, 1.0}, {0.5, 0.5}}), ValidationError);
}

TEST_CASE("centralized decision") {
    CHECK(centralized_decide({{0.2, 0.6}, {0.5, 0.5}}) == Verdict::One);
    CHECK(centralized_decide(single(0.8)) == Verdict::Zero);
    CHECK(centralized_decide(single(0.5)) == Verdict::Indifferent);
    CHECK(centralized_decide({{0.2, 0.8}, {0.5, 0.5}}) == Verdict::Indifferent);
}

TEST_CASE("fitness") {
    const GameParams gp = evaluation_params();
    SUBCASE("vanishing selection leaves baseline fitness") {
        GameParams weak = gp;
        weak.alpha = 1e-15;
        for (int k0 : {0, 7, 20}) {
            CHECK(fitness0(0, k0, single(0.3), weak) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(fitness1(0, k0, single(0.3), weak) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("symmetric belief") {
        GameParams no_reward = gp;
        no_reward.u = 0.0;
        CHECK(fitness0(0, 10, single(0.5), no_reward) == doctest::Approx(1.6431471805599454).epsilon(1e-14));
        CHECK(fitness1(0, 10, single(0.5), no_reward) == doctest::Approx(1.6431471805599454).epsilon(1e-14));
        CHECK(fitness0(0, 0, single(0.5), gp) == doctest::Approx(1.6431471805599454).epsilon(1e-14));
        CHECK(fitness1(0, 20, single(0.5), gp) == doctest::Approx(1.6431471805599454).epsilon(1e-14));
    }
    SUBCASE("simplified forms") {
        const double p = 0.27;
        for (int k0 = 0; k0 <= gp.k; ++k0) {
            const double f0 = 1 - gp.alpha + gp.alpha * (-gp.k * std::log(1 - p) + k0 * gp.u);
            const double f1 = 1 - gp.alpha + gp.alpha * (-gp.k * std::log(p) + (gp.k - k0) * gp.u);
            CHECK(fitness0(0, k0, single(p), gp) == doctest::Approx(f0).epsilon(1e-13));
            CHECK(fitness1(0, k0, single(p), gp) == doctest::Approx(f1).epsilon(1e-13));
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(fitness0(0, -1, single(0.3), gp), DomainError);
        CHECK_THROWS_AS(fitness1(0, 21, single(0.3), gp), DomainError);
        CHECK_THROWS_AS(fitness0(1, 3, single(0.3), gp), DomainError);
    }
}

TEST_CASE("fitness is bounded below by 1 - alpha") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> belief(1e-6, 1 - 1e-6);
    std::uniform_real_distribution<double> reward(0.0, 3.0);
    std::uniform_real_distribution<double> sel(1e-4, 0.999);
    for (int draw = 0; draw < 500; ++draw) {
        const int k = 2 + static_cast<int>(gen() % 40);
        const GameParams gp{k, reward(gen), sel(gen), 2 * k + 2};
        const TypeProfile prof = single(belief(gen));
        for (int k0 = 0; k0 <= k; ++k0) {
            CHECK(fitness0(0, k0, prof, gp) >= 1 - gp.alpha);
            CHECK(fitness1(0, k0, prof, gp) >= 1 - gp.alpha);
            const double t = transition_prob_exact(0, k0, prof, gp);
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
        }
    }
}

TEST_CASE("exact transition probability") {
    const GameParams gp = evaluation_params();
    CHECK(transition_prob_exact(0, 20, single(0.3), gp) == 0.0);
    CHECK(transition_prob_exact(0, 0, single(0.3), gp) == 1.0);
    GameParams no_reward = gp;
    no_reward.u = 0.0;
    for (double a : {0.01, 0.3, 0.9}) {
        no_reward.alpha = a;
        CHECK(transition_prob_exact(0, 10, single(0.5), no_reward) == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("exact transition equals per-neighbour lottery") {
    // Complement of the chance to draw a decision-0 neighbour when every
    // neighbour is weighted by its fitness.
    const GameParams gp = evaluation_params();
    const TypeProfile prof{{0.35, 0.7}, {0.4, 0.6}};
    for (std::size_t i = 0; i < 2; ++i) {
        for (int k0 = 0; k0 <= gp.k; ++k0) {
            double weight0 = 0.0;
            double total = 0.0;
            for (int m = 0; m < gp.k; ++m) {
                const double w = m < k0 ? fitness0(i, k0, prof, gp) : fitness1(i, k0, prof, gp);
                total += w;
                if (m < k0) weight0 += w;
            }
            CHECK(transition_prob_exact(i, k0, prof, gp) == doctest::Approx(1.0 - weight0 / total).epsilon(1e-13));
        }
    }
}

TEST_CASE("first-order transition probability") {
    GameParams gp = evaluation_params();
    CHECK(transition_prob_firstorder(0, 20, single(0.2), gp) == 0.0);
    CHECK(transition_prob_firstorder(0, 10, single(0.2), gp) == doctest::Approx(0.8465735902799726).epsilon(1e-14));
    gp.alpha = 1e-300;
    for (int k0 = 0; k0 <= 20; ++k0) {
        CHECK(transition_prob_firstorder(0, k0, single(0.2), gp) == doctest::Approx((20.0 - k0) / 20.0));
    }
}

TEST_CASE("binomial pmf") {
    CHECK(binomial_pmf(1, 0, 0.3) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(binomial_pmf(2, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(binomial_pmf(20, 10, 0.5) == doctest::Approx(0.17619705200195312).epsilon(1e-14));
    CHECK(binomial_pmf(5, 0, 0.0) == 1.0);
    CHECK(binomial_pmf(5, 5, 1.0) == 1.0);
    CHECK_THROWS_AS(binomial_pmf(5, 6, 0.5), DomainError);
    CHECK_THROWS_AS(binomial_pmf(5, 2, 1.5), DomainError);
    for (int k : {1, 2, 7, 20, 45}) {
        for (double x : {0.0, 0.13, 0.5, 0.91, 1.0}) {
            double total = 0.0;
            for (int k0 = 0; k0 <= k; ++k0) total += binomial_pmf(k, k0, x);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("expected transition") {
    const GameParams gp = evaluation_params();
    CHECK(expected_transition(0, 0.0, single(0.2), gp) == 1.0);
    CHECK(expected_transition(0, 1.0, single(0.2), gp) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(expected_transition(0, 0.5, single(0.2), gp) == doctest::Approx(0.829244910765974).epsilon(1e-13));
    CHECK_THROWS_AS(expected_transition(0, -0.01, single(0.2), gp), DomainError);
    CHECK_THROWS_AS(expected_transition(0, 1.01, single(0.2), gp), DomainError);
}

TEST_CASE("moment identity against explicit binomial sum") {
    for (int k : {2, 3, 5, 8, 20, 31}) {
        for (double p : {0.1, 0.37, 0.5, 0.9}) {
            for (double u : {0.0, 0.5, 1.7}) {
                const GameParams gp{k, u, 0.05, 2 * k + 2};
                for (int j = 0; j <= 20; ++j) {
                    const double x = j / 20.0;
                    const double expected = static_cast<double>(oracle::binomial_sum(k, x, p, u, 0.05));
                    CHECK(std::abs(expected_transition(0, x, single(p), gp) - expected) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("first-order error is second order in alpha") {
    const TypeProfile prof = single(0.3);
    auto max_gap = [&](double alpha) {
        const GameParams gp{20, 0.5, alpha, 1000};
        double gap = 0.0;
        for (int k0 = 0; k0 <= 20; ++k0) {
            gap = std::max(gap, std::abs(transition_prob_exact(0, k0, prof, gp) - transition_prob_firstorder(0, k0, prof, gp)));
        }
        return gap;
    };
    const double ratio = max_gap(2e-3) / max_gap(1e-3);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    CHECK(max_gap(1e-6) < 1e-9);
}

TEST_CASE("antisymmetry and permutation invariance of the discriminant") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> belief(0.01, 0.99);
    for (int draw = 0; draw < 200; ++draw) {
        const std::size_t types = 1 + gen() % 6;
        TypeProfile prof;
        double total = 0.0;
        for (std::size_t i = 0; i < types; ++i) {
            prof.beliefs.push_back(belief(gen));
            prof.proportions.push_back(1.0 + static_cast<double>(gen() % 9));
            total += prof.proportions.back();
        }
        for (double& q : prof.proportions) q /= total;
        prof.proportions.back() = 1.0;
        for (std::size_t i = 0; i + 1 < types; ++i) prof.proportions.back() -= prof.proportions[i];
        const double lambda = lambda_discriminant(prof);
        CHECK(lambda_discriminant(prof.mirrored()) == doctest::Approx(-lambda).epsilon(1e-12));

        std::vector<std::size_t> order(types);
        for (std::size_t i = 0; i < types; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), gen);
        TypeProfile permuted;
        for (std::size_t i : order) {
            permuted.beliefs.push_back(prof.beliefs[i]);
            permuted.proportions.push_back(prof.proportions[i]);
        }
        if (std::abs(lambda) > 1e-9) CHECK(centralized_decide(permuted) == centralized_decide(prof));
    }
}

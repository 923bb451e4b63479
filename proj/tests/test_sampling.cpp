#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "levytype/errors.hpp"
#include "levytype/levy_sampler.hpp"
#include "levytype/rng.hpp"
#include "levytype/stable_sampler.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace levytype;

TEST(Rng, SubstreamSeedsAreDistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t p = 0; p < 1000; ++p) seen.insert(derive_seed(42, p, s));
    EXPECT_EQ(seen.size(), 4000u);
    EXPECT_EQ(derive_seed(42, 7, 1), derive_seed(42, 7, 1));
    EXPECT_NE(derive_seed(42, 7, 1), derive_seed(43, 7, 1));
}

TEST(Rng, UniformIsOpenInterval) {
    Rng rng(1);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi, 1.0);
}

TEST(Rng, PoissonMean) {
    Rng rng(3);
    const int n = 100000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += static_cast<double>(rng.poisson(2.5));
    EXPECT_NEAR(s / n, 2.5, 4.0 * std::sqrt(2.5 / n));
}

TEST(StableSampler, AlphaTwoIsNormalWithVarianceTwo) {
    const auto x = sample_stable(2.0, 100000, 11);
    const double n = static_cast<double>(x.size());
    // Var of the sample variance of N(0, 2) is 2 * 4 / (n - 1).
    EXPECT_NEAR(stats::variance(x), 2.0, 4.0 * std::sqrt(8.0 / (n - 1)));
    for (double xi : {0.5, 1.0, 1.5}) EXPECT_NEAR(stats::ecf(x, xi).real(), std::exp(-xi * xi), 4.0 / std::sqrt(n));
}

TEST(StableSampler, AlphaOneIsStandardCauchy) {
    const auto x = sample_stable(1.0, 100000, 12);
    const double n = static_cast<double>(x.size());
    // The sample median of a standard Cauchy law has standard error pi / (2 sqrt n).
    EXPECT_NEAR(stats::median(x), 0.0, 4.0 * std::numbers::pi / (2.0 * std::sqrt(n)));
    EXPECT_NEAR(stats::ecf(x, 1.0).real(), std::exp(-1.0), 3.0 / std::sqrt(n));
    // Quartiles at -1 and 1.
    std::size_t below = 0;
    for (double v : x) below += v < 1.0;
    EXPECT_NEAR(below / n, 0.75, 4.0 * std::sqrt(0.75 * 0.25 / n));
}

TEST(StableSampler, CharacteristicFunctionAtOnePointFive) {
    const auto x = sample_stable(1.5, 100000, 13);
    double worst = 0.0;
    for (double xi : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(stats::ecf(x, xi) - std::exp(-std::pow(xi, 1.5))));
    EXPECT_LE(worst, 0.01);
}

TEST(StableSampler, SmallAlphaCharacteristicFunction) {
    const auto x = sample_stable(0.6, 100000, 14);
    for (double xi : {0.5, 1.0, 2.0}) EXPECT_NEAR(stats::ecf(x, xi).real(), std::exp(-std::pow(xi, 0.6)), 0.01);
}

TEST(StableSampler, DeterministicAndDomainChecked) {
    EXPECT_EQ(sample_stable(1.3, 100, 5), sample_stable(1.3, 100, 5));
    EXPECT_NE(sample_stable(1.3, 100, 5), sample_stable(1.3, 100, 6));
    EXPECT_THROW(sample_stable(0.0, 10, 1), DomainError);
    EXPECT_THROW(sample_stable(2.01, 10, 1), DomainError);
}

TEST(IncrementSampler, BrownianVariance) {
    const LevyIncrementSampler s(brownian(1.0));
    const double dt = 0.01;
    const auto inc = simulate_levy_increments(s, dt, 10, 10000, 21);
    const double n = static_cast<double>(inc.size());
    EXPECT_NEAR(stats::variance(inc), dt, 4.0 * dt * std::sqrt(2.0 / (n - 1)));
    EXPECT_NEAR(stats::mean(inc), 0.0, 4.0 * std::sqrt(dt / n));
}

TEST(IncrementSampler, ExactStableCharacteristicFunction) {
    for (double alpha : {0.8, 1.5}) {
        const LevyIncrementSampler s(symmetric_stable(alpha), {1e-3, IncrementMode::ExactStable});
        const auto inc = simulate_levy_increments(s, 0.1, 1, 100000, 22);
        for (double xi : {0.5, 1.0, 3.0})
            EXPECT_NEAR(stats::ecf(inc, xi).real(), std::exp(-0.1 * std::pow(xi, alpha)), 0.01) << alpha;
    }
}

TEST(IncrementSampler, CompoundPoissonJumpCount) {
    const LevyIncrementSampler s(LevyTriplet{0.0, 0.0, CompoundPoissonJumps{2.0, PointJump{1.0}}});
    EXPECT_EQ(s.epsilon_jump(), 0.0);
    Rng rng(23);
    const int n = 100000;
    double count = 0.0;
    for (int i = 0; i < n; ++i) count += static_cast<double>(s.draw(1.0, rng).jumps);
    EXPECT_NEAR(count / n, 2.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(IncrementSampler, CompensatorMatchesQuadrature) {
    const double eps = 1e-3;
    {
        const double rate = 1.5, m = 0.3, sd = 0.8;
        const LevyIncrementSampler s(LevyTriplet{0.0, 0.0, CompoundPoissonJumps{rate, NormalJump{m, sd}}}, {eps});
        auto y_nu = [&](double y) {
            return y * rate * std::exp(-0.5 * std::pow((y - m) / sd, 2)) / (sd * std::sqrt(2 * std::numbers::pi));
        };
        // With a finite measure the cutoff is dropped: the band is (0, 1].
        const double want = oracle::gk(y_nu, -1.0, 0.0) + oracle::gk(y_nu, 0.0, 1.0);
        EXPECT_NEAR(s.compensator(), want, 1e-12);
    }
    {
        const LevyIncrementSampler s(LevyTriplet{0.0, 0.0, AtomicJumps{{{0.5, 2.0}, {-0.25, 1.0}, {3.0, 1.0}}}});
        EXPECT_DOUBLE_EQ(s.compensator(), 2.0 * 0.5 - 0.25);
    }
    // Symmetric infinite measures compensate to zero.
    const LevyIncrementSampler st(symmetric_stable(1.5), {eps});
    EXPECT_EQ(st.compensator(), 0.0);
    EXPECT_NEAR(st.large_jump_rate(), 2.0 * stable_normalizer(1.5) * std::pow(eps, -1.5) / 1.5, 1e-9);
}

TEST(IncrementSampler, ExactAgreesWithTruncated) {
    const auto t = symmetric_stable(1.5);
    const LevyIncrementSampler exact(t, {1e-3, IncrementMode::ExactStable});
    const LevyIncrementSampler trunc(t, {1e-3, IncrementMode::Truncated});
    const auto a = simulate_levy_increments(exact, 0.1, 1, 10000, 100);
    const auto b = simulate_levy_increments(trunc, 0.1, 1, 10000, 200);
    EXPECT_LE(stats::ks_distance(a, b), 0.02);
    // Dropping jumps below 1e-3 leaves a systematic gap of about 0.006; at 10^5
    // draws the sampling noise is below that.
    const auto c = simulate_levy_increments(exact, 0.1, 1, 100000, 101);
    const auto d = simulate_levy_increments(trunc, 0.1, 1, 100000, 201);
    EXPECT_LE(stats::ks_distance(c, d), 0.012);
}

TEST(IncrementSampler, TemperedTruncatedMatchesCharacteristicFunction) {
    const LevyTriplet t{0.0, 0.0, TemperedStableJumps{0.9, 1.0, 1.0}};
    const LevyIncrementSampler s(t, {1e-3});
    const double dt = 0.2;
    const auto inc = simulate_levy_increments(s, dt, 1, 50000, 33);
    for (double xi : {0.5, 1.0, 2.0})
        EXPECT_NEAR(stats::ecf(inc, xi).real(), std::exp(-dt * eval_levy_khinchine(t, xi).real()), 0.01);
}

TEST(IncrementSampler, BatchMeansAreStationary) {
    const LevyIncrementSampler s(LevyTriplet{0.5, 0.2, CompoundPoissonJumps{3.0, UniformJump{-1.0, 2.0}}});
    const std::size_t steps = 40, paths = 5000;
    const double dt = 0.05;
    const auto inc = simulate_levy_increments(s, dt, steps, paths, 41);
    const double mu = (0.5 + 3.0 * 0.5) * dt - s.compensator() * dt;
    // E[jump] = 0.5; the uniform density rate/3 on [-1, 2].
    const double var_one = 0.2 * dt + 3.0 * dt * (1.0 + 4.0 + (-1.0 * 2.0)) / 3.0;  // a dt + rate dt E[Y^2]
    for (std::size_t w = 0; w < 4; ++w) {
        double sum = 0.0;
        for (std::size_t p = 0; p < paths; ++p)
            for (std::size_t k = w * 10; k < (w + 1) * 10; ++k) sum += inc[p * steps + k];
        const double n = static_cast<double>(paths * 10);
        EXPECT_NEAR(sum / n, mu, 3.0 * std::sqrt(var_one / n)) << "window " << w;
    }
}

TEST(IncrementSampler, InvalidConfigurations) {
    EXPECT_THROW(LevyIncrementSampler(symmetric_stable(1.5), {0.0}), InvalidMeasureError);
    EXPECT_THROW(LevyIncrementSampler(brownian(), {1e-3, IncrementMode::ExactStable}), InvalidMeasureError);
    EXPECT_THROW(LevyIncrementSampler(symmetric_stable(1.5), {-1.0}), DomainError);
    EXPECT_THROW(simulate_levy_increments(LevyIncrementSampler(brownian()), 0.0, 1, 1, 1), DomainError);
}

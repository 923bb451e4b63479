#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levytype/errors.hpp"
#include "levytype/levy_sampler.hpp"
#include "levytype/path_ensemble.hpp"
#include "levytype/simulate.hpp"
#include "stats.hpp"

using namespace levytype;

namespace {

std::vector<double> terminal(const PathEnsemble& e) {
    std::vector<double> v(e.paths);
    for (std::size_t i = 0; i < e.paths; ++i) v[i] = e.at(i, e.steps);
    return v;
}

SimulationParams params(double horizon, double dt, std::size_t paths, std::uint64_t seed, unsigned threads = 1) {
    SimulationParams p;
    p.horizon = horizon;
    p.dt = dt;
    p.paths = paths;
    p.seed = seed;
    p.threads = threads;
    return p;
}

}  // namespace

TEST(GluedSde, PureDriftReachesOneExactly) {
    const auto e = simulate_glued_sde(pure_drift(1.0), pure_drift(1.0), PointMass{0.0}, params(1.0, 0.125, 4, 1));
    ASSERT_EQ(e.steps, 8u);
    for (std::size_t i = 0; i < e.paths; ++i) EXPECT_EQ(e.at(i, e.steps), 1.0);
}

TEST(GluedSde, EqualDriversMatchSingleLevy) {
    const LevyTriplet t = symmetric_stable(1.5);
    const auto p = params(0.5, 0.01, 10000, 7);
    const auto glued = simulate_glued_sde(t, t, PointMass{0.0}, p, {1e-3, IncrementMode::ExactStable});
    const LevyIncrementSampler single_sampler(t, {1e-3, IncrementMode::ExactStable});
    const auto single = simulate_levy(single_sampler, PointMass{0.0}, params(0.5, 0.01, 10000, 8));
    EXPECT_LE(stats::ks_distance(terminal(glued), terminal(single)), 0.02);
}

// Drift +1 on (-inf, 0] and -1 on (0, inf): the path climbs to 0, reaching it
// at t = 0.5, and then oscillates between 0 and one step above it.
TEST(GluedSde, OdeSwitchingHitsZeroAndChatters) {
    const double dt = 1.0 / 1024;
    const auto e = simulate_glued_sde(pure_drift(1.0), pure_drift(-1.0), PointMass{-0.5}, params(1.0, dt, 1, 3));
    for (std::size_t k = 0; k <= e.steps; ++k) {
        const double t = e.time(k);
        const double x = e.at(0, k);
        if (t <= 0.5) {
            EXPECT_EQ(x, -0.5 + t) << "k=" << k;
        } else {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, dt);
        }
    }
    EXPECT_EQ(e.at(0, 512), 0.0);
    EXPECT_EQ(e.at(0, 513), dt);
    EXPECT_EQ(e.at(0, 514), 0.0);
}

TEST(GluedSde, NonCrossingPathsDependOnOneDriverOnly) {
    const LevyTriplet left = symmetric_stable(1.2);
    const LevyTriplet right = symmetric_stable(1.8);
    const SamplerOptions opts{1e-3, IncrementMode::ExactStable};
    const auto p = params(0.5, 1e-3, 400, 11);

    const auto base_left = simulate_glued_sde(left, right, PointMass{-1.0}, p, opts);
    const auto replay_left = simulate_glued_sde(left, right, PointMass{-1.0}, p, opts, {std::nullopt, 999});
    const auto base_right = simulate_glued_sde(left, right, PointMass{1.0}, p, opts);
    const auto replay_right = simulate_glued_sde(left, right, PointMass{1.0}, p, opts, {999, std::nullopt});

    std::size_t stayed_left = 0, stayed_right = 0, changed = 0;
    for (std::size_t i = 0; i < p.paths; ++i) {
        const auto a = base_left.path(i);
        if (*std::max_element(a.begin(), a.end()) <= 0.0) {
            ++stayed_left;
            EXPECT_TRUE(std::equal(a.begin(), a.end(), replay_left.path(i).begin())) << "path " << i;
        } else if (a.back() != replay_left.at(i, base_left.steps)) {
            ++changed;
        }
        const auto b = base_right.path(i);
        if (*std::min_element(b.begin(), b.end()) > 0.0) {
            ++stayed_right;
            EXPECT_TRUE(std::equal(b.begin(), b.end(), replay_right.path(i).begin())) << "path " << i;
        }
    }
    EXPECT_GT(stayed_left, 100u);
    EXPECT_GT(stayed_right, 100u);
    // Crossing paths do see the replaced driver.
    EXPECT_GT(changed, 0u);
}

TEST(GluedSde, DeterministicAndThreadInvariant) {
    const LevyTriplet left = symmetric_stable(1.2);
    const LevyTriplet right = symmetric_stable(1.8);
    const SamplerOptions opts{1e-3, IncrementMode::ExactStable};
    const auto a = simulate_glued_sde(left, right, UniformLaw{-1.0, 1.0}, params(0.2, 1e-3, 300, 5, 1), opts);
    const auto b = simulate_glued_sde(left, right, UniformLaw{-1.0, 1.0}, params(0.2, 1e-3, 300, 5, 4), opts);
    const auto c = simulate_glued_sde(left, right, UniformLaw{-1.0, 1.0}, params(0.2, 1e-3, 300, 6, 1), opts);
    EXPECT_EQ(a.states, b.states);
    EXPECT_NE(a.states, c.states);
}

TEST(GluedSde, AddingPathsKeepsEarlierOnes) {
    const LevyTriplet t = symmetric_stable(1.5);
    const auto small = simulate_glued_sde(t, t, NormalLaw{0.0, 1.0}, params(0.1, 0.01, 10, 2));
    const auto large = simulate_glued_sde(t, t, NormalLaw{0.0, 1.0}, params(0.1, 0.01, 50, 2, 3));
    for (std::size_t i = 0; i < small.paths; ++i) {
        const auto a = small.path(i);
        EXPECT_TRUE(std::equal(a.begin(), a.end(), large.path(i).begin()));
    }
}

TEST(StableLike, ConstantIndexGivesExactStableMarginal) {
    const double T = 0.5;
    const auto e = simulate_stable_like(StabilityIndex::constant(1.3), PointMass{0.0}, params(T, 0.01, 100000, 21, 4));
    const auto x = terminal(e);
    double worst = 0.0;
    for (double xi : {0.5, 1.0, 2.0, 4.0}) {
        const auto c = stats::ecf(x, xi);
        worst = std::max(worst, std::abs(c - std::exp(-T * std::pow(xi, 1.3))));
    }
    EXPECT_LE(worst, 0.01);
}

TEST(StableLike, IndexTwoIsBrownianScaling) {
    const double T = 0.5;
    const std::size_t n = 40000;
    const auto e = simulate_stable_like([](double) { return 2.0; }, PointMass{0.0}, params(T, 0.01, n, 4));
    const double var = stats::variance(terminal(e));
    // Var of the sample variance of N(0, s^2) is 2 s^4 / (N - 1).
    const double sigma = std::sqrt(2.0 * (2 * T) * (2 * T) / (n - 1));
    EXPECT_NEAR(var, 2 * T, 4 * sigma);
}

TEST(StableLike, IndexOutsideRangeNamesThePath) {
    try {
        simulate_stable_like([](double x) { return x > 0.5 ? 2.5 : 1.5; }, UniformLaw{0.0, 1.0},
                             params(0.01, 0.01, 8, 1));
        FAIL() << "expected SimulationError";
    } catch (const SimulationError& e) {
        EXPECT_NE(std::string(e.what()).find("path"), std::string::npos);
        EXPECT_LT(e.path_index(), 8u);
    }
}

TEST(Simulation, HorizonMustBeMultipleOfStep) {
    EXPECT_THROW(simulate_stable_like(StabilityIndex::constant(1.0), PointMass{0.0}, params(0.105, 0.01, 5, 1)),
                 Error);
}

TEST(Simulation, LevyPathsAreCumulativeIncrements) {
    const LevyIncrementSampler s(brownian(1.0, 0.5));
    const auto e = simulate_levy(s, PointMass{2.0}, params(1.0, 0.01, 20000, 9));
    const auto x = terminal(e);
    EXPECT_NEAR(stats::mean(x), 2.5, 4 * std::sqrt(1.0 / 20000));
    EXPECT_NEAR(stats::variance(x), 1.0, 4 * std::sqrt(2.0 / 20000));
    for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(e.initial(i), 2.0);
}

TEST(PathEnsemble, BinaryRoundTrip) {
    const auto e = simulate_stable_like(StabilityIndex::step(1.2, 1.8), UniformLaw{-1, 1}, params(0.05, 0.01, 7, 3));
    std::stringstream ss;
    write_binary(e, ss);
    const std::string bytes = ss.str();
    EXPECT_EQ(bytes.substr(0, 8), "LVTPATHS");
    EXPECT_EQ(bytes.size(), 8 + 4 + 8 + 8 + 8 + 8 + 8 * 7 * 6);
    const auto r = read_binary(ss);
    EXPECT_EQ(r.steps, e.steps);
    EXPECT_EQ(r.paths, e.paths);
    EXPECT_EQ(r.dt, e.dt);
    EXPECT_EQ(r.seed, e.seed);
    EXPECT_EQ(r.states, e.states);
}

TEST(PathEnsemble, BinaryRejectsGarbage) {
    std::stringstream bad("NOTPATHS and more");
    EXPECT_THROW(read_binary(bad), InputError);
    const auto e = simulate_stable_like(StabilityIndex::constant(1.0), PointMass{0.0}, params(0.05, 0.01, 3, 3));
    std::stringstream ss;
    write_binary(e, ss);
    std::stringstream truncated(ss.str().substr(0, ss.str().size() - 5));
    EXPECT_THROW(read_binary(truncated), InputError);
}

TEST(PathEnsemble, CsvStridesKeepLastStep) {
    const auto e = simulate_stable_like(StabilityIndex::constant(1.0), PointMass{0.0}, params(0.1, 0.01, 5, 3));
    std::stringstream ss;
    write_csv(e, ss, 2, 3);
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "path_id,t,x");
    std::size_t rows = 0;
    bool saw_last = false;
    while (std::getline(ss, line)) {
        ++rows;
        const auto comma = line.find(',');
        const int id = std::stoi(line.substr(0, comma));
        EXPECT_EQ(id % 2, 0);
        if (std::abs(std::stod(line.substr(comma + 1)) - 0.1) < 1e-12) saw_last = true;
    }
    // paths 0, 2, 4; steps 0, 3, 6, 9, 10
    EXPECT_EQ(rows, 3u * 5u);
    EXPECT_TRUE(saw_last);
}

TEST(PathEnsemble, StepOf) {
    const auto e = simulate_stable_like(StabilityIndex::constant(1.0), PointMass{0.0}, params(0.5, 0.001, 2, 3));
    EXPECT_EQ(e.step_of(0.25), 250u);
    EXPECT_EQ(e.step_of(0.5), 500u);
    EXPECT_THROW(e.step_of(0.2505), InputError);
    EXPECT_THROW(e.step_of(0.6), InputError);
    double x = 1.0;
    EXPECT_TRUE(e.point_started(&x));
    EXPECT_EQ(x, 0.0);
}

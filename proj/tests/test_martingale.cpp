#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "levytype/errors.hpp"
#include "levytype/generator.hpp"
#include "levytype/levy_sampler.hpp"
#include "levytype/martingale.hpp"
#include "levytype/simulate.hpp"

using namespace levytype;

namespace {

SimulationParams params(double horizon, double dt, std::size_t paths, std::uint64_t seed) {
    SimulationParams p;
    p.horizon = horizon;
    p.dt = dt;
    p.paths = paths;
    p.seed = seed;
    p.threads = 4;
    return p;
}

std::vector<WeightFn> weights() {
    return {{"one", [](double) { return 1.0; }},
            {"bump", [](double x) { return std::numbers::e * bump_profile(x / 2.0); }}};
}

}  // namespace

TEST(Martingale, PureDriftDefectIsTrapezoidError) {
    const LevyIncrementSampler s(pure_drift(1.0));
    const auto e = simulate_levy(s, UniformLaw{-2.0, 1.0}, params(0.5, 1e-3, 2000, 3));
    const GeneratorSpec spec = LevyGenerator{pure_drift(1.0)};
    const auto w = weights();
    for (const auto& f : canonical_test_functions()) {
        const std::vector<WeightFn> h{w[1]};
        const std::vector<double> times{0.25};
        const auto r = martingale_defect(e, spec, f, h, times, 0.25, 0.5);
        // (t_end - t_start) dt^2 / 12 sup |f'''| is far below this.
        EXPECT_LT(std::abs(r.defect), 1e-6) << f.name();
        EXPECT_LE(r.cache_error, 1e-6);
    }
}

TEST(Martingale, BrownianPathsMatchTheirGenerator) {
    const LevyIncrementSampler s(brownian(1.0));
    const auto e = simulate_levy(s, PointMass{0.0}, params(0.5, 1e-3, 20000, 8));
    const GeneratorSpec spec = LevyGenerator{brownian(1.0)};
    const auto w = weights();
    for (const auto& f : canonical_test_functions()) {
        for (const auto& h : w) {
            const std::vector<WeightFn> hs{h};
            const std::vector<double> times{0.25};
            const auto r = martingale_defect(e, spec, f, hs, times, 0.25, 0.5);
            EXPECT_TRUE(r.pass) << f.name() << "/" << h.id << " z=" << r.z;
            EXPECT_GT(r.stderr_, 0.0);
            EXPECT_EQ(r.paths, 20000u);
        }
    }
}

TEST(Martingale, WrongDiffusionIsDetected) {
    const LevyIncrementSampler s(brownian(1.0));
    const auto e = simulate_levy(s, PointMass{0.0}, params(0.5, 1e-3, 20000, 8));
    const GeneratorSpec wrong = LevyGenerator{brownian(3.0)};
    const auto f = canonical_test_functions().front();
    const std::vector<WeightFn> hs{weights()[0]};
    const std::vector<double> times{0.0};
    const auto r = martingale_defect(e, wrong, f, hs, times, 0.0, 0.5);
    EXPECT_GT(std::abs(r.z), 5.0);
    EXPECT_FALSE(r.pass);
}

TEST(Martingale, DiscontinuousIndexPasses) {
    const auto alpha = StabilityIndex::step(1.2, 1.8);
    const auto e = simulate_stable_like(alpha, PointMass{0.0}, params(0.5, 1e-3, 20000, 12));
    const GeneratorSpec spec = StableLikeGenerator{alpha};
    const auto fs = canonical_test_functions();
    const std::vector<WeightFn> hs{weights()[1]};
    const std::vector<double> times{0.25};
    for (const auto& f : {fs[0], fs[1]}) {
        const auto r = martingale_defect(e, spec, f, hs, times, 0.25, 0.5);
        EXPECT_LE(std::abs(r.z), 3.0) << f.name();
    }
}

TEST(Martingale, ThreadsDoNotChangeTheEstimate) {
    const auto e = simulate_stable_like(StabilityIndex::constant(1.5), PointMass{0.0}, params(0.2, 1e-3, 3000, 4));
    const GeneratorSpec spec = StableLikeGenerator{StabilityIndex::constant(1.5)};
    const auto f = canonical_test_functions()[1];
    const std::vector<WeightFn> hs{weights()[1]};
    const std::vector<double> times{0.1};
    MartingaleOptions one, many;
    many.threads = 6;
    const auto a = martingale_defect(e, spec, f, hs, times, 0.1, 0.2, one);
    const auto b = martingale_defect(e, spec, f, hs, times, 0.1, 0.2, many);
    EXPECT_EQ(a.defect, b.defect);
    EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(GeneratorCacheTest, InterpolationWithinBudget) {
    const auto alpha = StabilityIndex::step(1.2, 1.8);
    const GeneratorSpec spec = StableLikeGenerator{alpha};
    const auto f = canonical_test_functions()[4];
    std::vector<double> errors;
    int points = 2048;
    for (int r = 0; r <= 3; ++r, points *= 2) {
        errors.push_back(GeneratorCache(spec, f, -6.0, 6.0, points).midpoint_error());
        if (errors.back() <= 1e-6) break;
    }
    ASSERT_LE(errors.back(), 1e-6);
    for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_LT(errors[i], errors[i - 1]);
    const GeneratorCache cache(spec, f, -6.0, 6.0, points);
    for (double x : {-5.9, -2.3, -0.4, -1e-9, 0.0, 1e-9, 0.37, 1.1, 4.4})
        EXPECT_NEAR(cache(x), apply_generator_integral(spec, f, x), 1e-6) << "x=" << x;
    // Outside the table the generator is evaluated directly.
    EXPECT_DOUBLE_EQ(cache(9.0), apply_generator_integral(spec, f, 9.0));
}

TEST(GeneratorCacheTest, BudgetTooTightIsReported) {
    const auto e = simulate_stable_like(StabilityIndex::constant(1.5), PointMass{0.0}, params(0.1, 0.01, 100, 4));
    MartingaleOptions opts;
    opts.cache_points = 16;
    opts.cache_budget = 1e-15;
    opts.max_refinements = 0;
    EXPECT_THROW(build_generator_cache(e, StableLikeGenerator{StabilityIndex::constant(1.5)},
                                       canonical_test_functions()[0], opts),
                 NumericError);
}

TEST(Martingale, TimesMustBeOnGridAndOrdered) {
    const auto e = simulate_stable_like(StabilityIndex::constant(1.5), PointMass{0.0}, params(0.1, 0.01, 50, 4));
    const GeneratorSpec spec = StableLikeGenerator{StabilityIndex::constant(1.5)};
    const auto f = canonical_test_functions()[0];
    const std::vector<WeightFn> hs{weights()[0]};
    const std::vector<double> late{0.08};
    const std::vector<double> ok{0.02};
    EXPECT_THROW(martingale_defect(e, spec, f, hs, late, 0.05, 0.1), InputError);
    EXPECT_THROW(martingale_defect(e, spec, f, hs, ok, 0.055, 0.1), InputError);
    EXPECT_THROW(martingale_defect(e, spec, f, hs, ok, 0.1, 0.05), InputError);
}

TEST(Martingale, CsvColumns) {
    const auto e = simulate_stable_like(StabilityIndex::constant(1.5), PointMass{0.0}, params(0.1, 0.01, 50, 4));
    const GeneratorSpec spec = StableLikeGenerator{StabilityIndex::constant(1.5)};
    const std::vector<WeightFn> hs{weights()[1]};
    const std::vector<double> times{0.05};
    const std::vector<MartingaleTestReport> reports{
        martingale_defect(e, spec, canonical_test_functions()[0], hs, times, 0.05, 0.1)};
    std::ostringstream os;
    write_martingale_csv(os, reports);
    const auto text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "f,h,t_start,t_end,defect,stderr,z,paths,pass");
    EXPECT_NE(text.find("f1,bump,"), std::string::npos);
}

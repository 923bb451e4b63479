#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levytype/bounds.hpp"
#include "levytype/conditions.hpp"
#include "levytype/errors.hpp"
#include "levytype/glue.hpp"
#include "levytype/levy_sampler.hpp"
#include "levytype/schedule.hpp"
#include "levytype/simulate.hpp"
#include "levytype/symbol.hpp"
#include "oracles.hpp"

using namespace levytype;
using std::numbers::pi;

namespace {

std::vector<SymbolFn> glued_family(int n_max) {
    std::vector<SymbolFn> family;
    for (int n = 1; n <= n_max; ++n)
        family.push_back(glued_approx_symbol(symmetric_stable(1.2), symmetric_stable(1.8), n));
    return family;
}

const ConditionReport& find(const std::vector<ConditionReport>& reports, const std::string& id) {
    for (const auto& r : reports)
        if (r.id == id) return r;
    throw std::runtime_error("no report " + id);
}

SimulationParams params(double horizon, double dt, std::size_t paths, std::uint64_t seed) {
    SimulationParams p;
    p.horizon = horizon;
    p.dt = dt;
    p.paths = paths;
    p.seed = seed;
    p.threads = 4;
    return p;
}

// (4 pi)^-1 int exp(-(t/16) q(xi)) dxi for an even q, by exp-sinh quadrature.
double density_integral(const std::function<double(double)>& q, double t) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double half = integrator.integrate([&](double xi) { return std::exp(-(t / 16.0) * q(xi)); });
    return 2.0 * half / (4.0 * pi);
}

}  // namespace

TEST(SymbolConditions, GluedFamilyVanishesAtZero) {
    const auto family = glued_family(10);
    const auto reports = check_symbol_conditions(family, default_condition_grid(family));
    EXPECT_EQ(find(reports, "A1").value, 0.0);
    EXPECT_EQ(find(reports, "A1").verdict, Verdict::Pass);
}

TEST(SymbolConditions, GluedFamilyGrowsFasterThanLog) {
    const auto family = glued_family(10);
    const auto grid = default_condition_grid(family);
    const auto reports = check_symbol_conditions(family, grid);
    const auto& a4 = find(reports, "A4");
    EXPECT_EQ(a4.verdict, Verdict::Pass);
    for (std::size_t i = 1; i < a4.series.size(); ++i) EXPECT_GT(a4.series[i].second, a4.series[i - 1].second);

    auto ratio = [&](double xi) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& q : family)
            for (double x : grid.x) m = std::min(m, q(x, xi).real() / std::log1p(xi));
        return m;
    };
    EXPECT_GT(ratio(1e3), ratio(1e2));
    EXPECT_EQ(find(reports, "A2").verdict, Verdict::Pass);
    EXPECT_EQ(find(reports, "A3").verdict, Verdict::Pass);
}

TEST(SymbolConditions, GaussianGrowthConstantIsOne) {
    const std::vector<SymbolFn> family{levy_symbol(brownian(2.0))};
    const auto reports = check_symbol_conditions(family, default_condition_grid(family));
    EXPECT_NEAR(find(reports, "A2").value, 1.0, 1e-7);
    EXPECT_LE(find(reports, "A2").value, 1.0);
}

TEST(SymbolConditions, ReportsAreDeterministic) {
    const auto family = glued_family(3);
    const auto grid = default_condition_grid(family);
    std::ostringstream a, b;
    const auto ra = check_symbol_conditions(family, grid);
    const auto rb = check_symbol_conditions(family, grid);
    write_reports_csv(a, ra);
    write_reports_csv(b, rb);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "id,verdict,value,threshold,grid,detail");
}

TEST(SymbolConditions, EmptyGridsAreRejected) {
    const auto family = glued_family(1);
    ConditionGrid grid = default_condition_grid(family);
    grid.x.clear();
    EXPECT_THROW(check_symbol_conditions(family, grid), InputError);
    EXPECT_THROW(check_symbol_conditions(std::span<const SymbolFn>{}, default_condition_grid(family)), InputError);
}

TEST(HartmanWintner, Examples) {
    const auto sqrt_q = exponent_symbol("sqrt", [](double xi) { return cplx(std::sqrt(std::abs(xi))); }, 1.0);
    const auto log_q = exponent_symbol("log", [](double xi) { return cplx(std::log1p(std::abs(xi))); }, 1.0);
    const auto sq_q = exponent_symbol("square", [](double xi) { return cplx(xi * xi); }, 1.0);

    EXPECT_EQ(hartman_wintner(sqrt_q).verdict, Verdict::Pass);
    const auto lr = hartman_wintner(log_q);
    EXPECT_EQ(lr.verdict, Verdict::Fail);
    EXPECT_NEAR(lr.value, 1.0, 1e-12);
    const auto sr = hartman_wintner(sq_q);
    EXPECT_EQ(sr.verdict, Verdict::Pass);
    ASSERT_FALSE(sr.series.empty());
    for (const auto& [xi, v] : sr.series) EXPECT_NEAR(v, xi * xi / std::log1p(xi), 1e-9 * v);
}

TEST(HartmanWintner, StableDriversPass) {
    for (double a : {0.5, 1.0, 1.2, 1.8}) EXPECT_EQ(hartman_wintner(levy_symbol(symmetric_stable(a))).verdict, Verdict::Pass);
}

TEST(ExitProbability, PureDriftNeverExceeds) {
    const LevyIncrementSampler s(pure_drift(1.0));
    const auto e = simulate_levy(s, PointMass{0.0}, params(1.0, 0.01, 100, 1));
    const auto c = exit_probability_check(e, levy_symbol(pure_drift(1.0)), 2.0, 1.0);
    EXPECT_EQ(c.exceedances, 0u);
    EXPECT_GE(c.bound, 0.0);
    EXPECT_EQ(c.verdict, Verdict::Pass);
}

TEST(ExitProbability, CauchyWithinBound) {
    const LevyTriplet cauchy = symmetric_stable(1.0);
    const LevyIncrementSampler s(cauchy, {1e-3, IncrementMode::ExactStable});
    const double t = 0.1, radius = 10.0;
    const auto e = simulate_levy(s, PointMass{0.0}, params(t, 1e-3, 10000, 17));
    const auto c = exit_probability_check(e, levy_symbol(cauchy), radius, t);
    EXPECT_LE(c.frequency, c.bound + 3 * c.stderr_);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_NEAR(c.symbol_sup, 1.0 / radius, 1e-12);
    // Levy's inequality for a symmetric process: P(sup |X| >= K) <= 2 P(|X_t| >= K).
    const double tail = 1.0 - 2.0 / pi * std::atan(radius / t);
    EXPECT_LE(c.frequency, 2.0 * tail + 3.0 * std::sqrt(2.0 * tail / e.paths));
    EXPECT_GT(c.frequency, 0.0);
}

TEST(ExitProbability, BrownianFarBelowBound) {
    const LevyTriplet bm = brownian(1.0);
    const LevyIncrementSampler s(bm);
    const auto e = simulate_levy(s, PointMass{0.0}, params(1.0, 0.01, 10000, 5));
    const auto c = exit_probability_check(e, levy_symbol(bm), 6.0, 1.0);
    // Reflection principle: P(sup |B| >= 6) <= 4 (1 - Phi(6)) ~ 4e-9.
    const double oracle = 4.0 * (1.0 - oracle::normal_cdf(6.0));
    EXPECT_LT(oracle, 1e-8);
    EXPECT_EQ(c.exceedances, 0u);
    EXPECT_GT(c.bound, 1e3 * oracle);
    EXPECT_NEAR(c.symbol_sup, 0.5 / 36.0, 1e-12);
    EXPECT_EQ(c.verdict, Verdict::Pass);
}

TEST(ExitProbability, RequiresPointStart) {
    const LevyIncrementSampler s(brownian(1.0));
    const auto e = simulate_levy(s, UniformLaw{-1.0, 1.0}, params(0.1, 0.01, 10, 5));
    EXPECT_THROW(exit_probability_check(e, levy_symbol(brownian(1.0)), 1.0, 0.1), InputError);
}

TEST(DensityBound, CauchyMatchesClosedForm) {
    const std::vector<SymbolFn> family{levy_symbol(symmetric_stable(1.0))};
    const auto b = transition_density_bound(family, 1.0);
    ASSERT_TRUE(b.finite);
    // int exp(-|xi| / 16) dxi = 32.
    EXPECT_NEAR(b.value, 8.0 / pi, 1e-10);
    EXPECT_NEAR(b.value, density_integral([](double xi) { return xi; }, 1.0), 1e-10);
    EXPECT_LE(1.0 / pi, b.value);
    EXPECT_NEAR(b.envelope_gamma, 1.0, 1e-6);
}

TEST(DensityBound, GaussianAgreesWithQuadrature) {
    for (double t : {0.5, 1.0, 2.0}) {
        const std::vector<SymbolFn> family{levy_symbol(brownian(1.0))};
        const auto b = transition_density_bound(family, t);
        ASSERT_TRUE(b.finite);
        const double oracle = density_integral([](double xi) { return 0.5 * xi * xi; }, t);
        EXPECT_NEAR(b.value, oracle, 1e-9 * oracle) << "t=" << t;
        // Heat kernel maximum (2 pi t)^-1/2 sits below the bound.
        EXPECT_LE(1.0 / std::sqrt(2.0 * pi * t), b.value);
    }
}

TEST(DensityBound, GluedFamilyIsFinite) {
    const auto b = transition_density_bound(glued_family(10), 1.0);
    EXPECT_TRUE(b.finite) << b.detail;
    EXPECT_TRUE(std::isfinite(b.value));
    EXPECT_GT(b.value, 0.0);
    // The slower of the two drivers sets the envelope.
    EXPECT_NEAR(b.envelope_gamma, 1.2, 0.05);
}

TEST(DensityBound, LogarithmicSymbolIsFlagged) {
    const std::vector<SymbolFn> family{
        exponent_symbol("log", [](double xi) { return cplx(std::log1p(std::abs(xi))); }, 1.0)};
    const auto b = transition_density_bound(family, 1.0);
    EXPECT_FALSE(b.finite);
    EXPECT_FALSE(b.detail.empty());
}

TEST(ExceptionalSetChecks, NestedSetsPass) {
    const std::vector<double> d{-1.0, 0.0, 1.0};
    EXPECT_EQ(check_b1(build_exceptional_sets(d, 20)).verdict, Verdict::Pass);
    EXPECT_EQ(check_b1(threshold_exceptional_sets(20)).verdict, Verdict::Pass);
}

TEST(ExceptionalSetChecks, ScheduleReportsMirrorCertificates) {
    const auto alpha = StabilityIndex::piecewise_constant({-1.0, 0.0, 1.0}, {1.3, 1.6, 1.1, 1.8});
    const auto schedule = select_schedule(alpha, 0.05, 4);
    const auto reports = schedule_reports(schedule);
    ASSERT_EQ(reports.size(), 3u);
    for (const auto& r : reports) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id << ": " << r.detail;
    EXPECT_EQ(reports[0].id, "S1");
    EXPECT_EQ(reports[2].id, "S3");
}

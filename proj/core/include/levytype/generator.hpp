#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "levytype/levy_triplet.hpp"
#include "levytype/mollifier.hpp"
#include "levytype/stability_index.hpp"
#include "levytype/symbol.hpp"
#include "levytype/test_function.hpp"

namespace levytype {

struct LevyGenerator {
    LevyTriplet triplet;
};

// A^alpha with symbol |xi|^alpha(x).
struct StableLikeGenerator {
    StabilityIndex alpha;
};

// Left triplet on (-inf, 0], right triplet on (0, inf).
struct GluedGenerator {
    LevyTriplet left;
    LevyTriplet right;
};

// Generator of q^n(x, xi) = q1(g1(x) xi) + q2(g2(x) xi).
struct GluedApproxGenerator {
    LevyTriplet left;
    LevyTriplet right;
    int n = 1;
};

// Stable-like generator with a smooth index alpha_n.
struct StableLikeApproxGenerator {
    std::shared_ptr<const MollifiedIndex> alpha;
};

using GeneratorSpec =
    std::variant<LevyGenerator, StableLikeGenerator, GluedGenerator, GluedApproxGenerator, StableLikeApproxGenerator>;

void validate(const GeneratorSpec& spec);
std::string describe(const GeneratorSpec& spec);
SymbolFn symbol_of(const GeneratorSpec& spec);
// Points across which x -> Af(x) may be discontinuous.
std::vector<double> generator_breakpoints(const GeneratorSpec& spec);

struct GeneratorOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
    int max_panels = 4000;
    // Bound on the neglected tail of the Fourier inversion integral.
    double fourier_tail_tol = 1e-10;
};

// Af(x) = b f'(x) + a f''(x) / 2 + int (f(x + y) - f(x) - y f'(x) 1_{|y|<=1}) nu(dy),
// with the characteristics frozen at x. Throws NumericError when the jump
// integral does not converge.
double apply_generator_integral(const GeneratorSpec& spec, const TestFn& f, double x,
                                const GeneratorOptions& opts = {});

struct FourierEvaluation {
    double value = 0.0;
    double imag_residual = 0.0;
    double cutoff = 0.0;  // largest |omega| = r |xi| used, over the bump terms
};

// Af(x) = -int e^{i x xi} q(x, xi) f^(xi) dxi, truncated where the tail bound
// C (1 + xi^2) |f^| integrated beyond the cutoff drops below fourier_tail_tol.
FourierEvaluation apply_generator_fourier_detailed(const GeneratorSpec& spec, const TestFn& f, double x,
                                                   const GeneratorOptions& opts = {});
double apply_generator_fourier(const GeneratorSpec& spec, const TestFn& f, double x,
                               const GeneratorOptions& opts = {});

// Uniform grid over a finite union of closed intervals: at least
// points_per_unit points per unit length, endpoints always included.
std::vector<double> region_grid(std::span<const Interval> region, int points_per_unit = 512);

// sup over region_grid(region) of |A f - B f|, both by the integral route.
double generator_difference_sup(const GeneratorSpec& a, const GeneratorSpec& b, const TestFn& f,
                                std::span<const Interval> region, int points_per_unit = 512,
                                const GeneratorOptions& opts = {});

// Upper bound for int C (1 + xi^2) |f^(xi)| dxi (triangle inequality over the bump terms).
double fourier_weighted_norm(const TestFn& f, double growth_constant);

}  // namespace levytype

#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace levytype {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Jump measures. The set of families is closed so that integrability of
// min(1, y^2) against nu can be certified per family.
// ---------------------------------------------------------------------------

struct NoJumps {};

// nu(dy) = scale / |y|^(1+alpha) dy. With scale = stable_normalizer(alpha)
// the characteristic exponent is exactly |xi|^alpha.
struct StableJumps {
    double alpha = 1.0;
    double scale = 1.0;
};

// nu(dy) = scale * exp(-lambda |y|) / |y|^(1+alpha) dy.
struct TemperedStableJumps {
    double alpha = 1.0;
    double lambda = 1.0;
    double scale = 1.0;
};

struct PointJump {
    double value = 1.0;
};
struct NormalJump {
    double mean = 0.0;
    double sd = 1.0;
};
struct UniformJump {
    double lo = -1.0;
    double hi = 1.0;
};
using JumpDistribution = std::variant<PointJump, NormalJump, UniformJump>;

// nu = rate * (law of one jump).
struct CompoundPoissonJumps {
    double rate = 1.0;
    JumpDistribution distribution = PointJump{};
};

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

// Finite sum of weighted point masses; used mostly in tests.
struct AtomicJumps {
    std::vector<Atom> atoms;
};

using JumpMeasure =
    std::variant<NoJumps, StableJumps, TemperedStableJumps, CompoundPoissonJumps, AtomicJumps>;

// Characteristics (b, a, nu) of a one-dimensional Levy process.
struct LevyTriplet {
    double drift = 0.0;
    double diffusion = 0.0;
    JumpMeasure jumps = NoJumps{};

    // Throws DomainError / InvalidMeasureError on a violated invariant.
    void validate() const;
    bool symmetric_jumps() const;
};

std::string describe(const LevyTriplet& triplet);

// Constant h with  int (1 - cos y) h / |y|^(1+alpha) dy = 1  over R \ {0}.
// Throws DomainError unless 0 < alpha < 2.
double stable_normalizer(double alpha);

// q(xi) = -i b xi + a xi^2 / 2 + int (1 - e^{i xi y} + i xi y 1_{|y|<=1}) nu(dy).
cplx eval_levy_khinchine(const LevyTriplet& triplet, double xi);

// Jump part of the exponent alone.
cplx jump_exponent(const JumpMeasure& jumps, double xi);

// A constant C with |q(xi)| <= C (1 + xi^2) for every real xi.
double growth_constant(const LevyTriplet& triplet);

// nu({|y| > eps}); +inf when eps == 0 and nu is infinite.
double tail_mass(const JumpMeasure& jumps, double eps);

// int_{eps < |y| <= 1} y nu(dy).
double compensator_drift(const JumpMeasure& jumps, double eps);

// int min(1, y^2) nu(dy), computed per family.
double integrability_mass(const JumpMeasure& jumps);

// Convenience builders.
LevyTriplet brownian(double variance = 1.0, double drift = 0.0);
LevyTriplet symmetric_stable(double alpha);  // exponent |xi|^alpha
LevyTriplet pure_drift(double b);

}  // namespace levytype

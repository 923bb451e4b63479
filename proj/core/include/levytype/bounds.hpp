#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levytype/conditions.hpp"
#include "levytype/path_ensemble.hpp"
#include "levytype/symbol.hpp"

namespace levytype {

// sup_x sup_{|xi| <= r} |q(x, xi)| over x_grid and 201 points of [-r, r].
double symbol_sup_near_zero(const SymbolFn& q, double r, std::span<const double> x_grid);

// sup |q(x, xi)| / (1 + xi^2) on the grid (the empirical (A2) constant).
double empirical_growth_constant(const SymbolFn& q, std::span<const double> x_grid, std::span<const double> xi_grid);

enum class ExitConstant {
    Claimed,    // the symbol's stored growth constant
    Empirical,  // sup |q| / (1 + xi^2) measured on a grid
};

struct ExitCheck {
    double radius = 0.0;  // K'
    double t = 0.0;
    std::size_t paths = 0;
    std::size_t exceedances = 0;
    double frequency = 0.0;
    double stderr_ = 0.0;  // binomial, sqrt(p (1 - p) / N)
    double constant = 0.0;
    double claimed_constant = 0.0;
    double empirical_constant = 0.0;
    double symbol_sup = 0.0;  // sup_{|xi| <= 1/K'} ||q(., xi)||
    double bound = 0.0;       // constant * t * symbol_sup
    double margin = 0.0;      // frequency / bound (inf if bound == 0 < frequency)
    Verdict verdict = Verdict::Fail;
    std::string detail;
};

// Empirical P(sup_{s <= t} |X_s - x| >= K') against C t sup_{|xi| <= 1/K'} ||q(., xi)||.
// PASS when frequency <= bound + 3 stderr, WARN when it is within twice the bound
// (+ 3 stderr), FAIL otherwise. Throws InputError unless the ensemble is point-started.
ExitCheck exit_probability_check(const PathEnsemble& ensemble, const SymbolFn& q, double radius, double t,
                                 ExitConstant which = ExitConstant::Claimed);

struct DensityOptions {
    std::vector<double> z_grid;    // empty: 201 points on [-5, 5] plus symbol breakpoints
    double fit_lo = 10.0;          // power envelope fitted on shells in [fit_lo, fit_hi]
    double fit_hi = 1e4;
    int fit_shells = 25;
    double probe_hi = 1e8;         // the envelope must still hold on shells in [fit_hi, probe_hi]
    double exponent_cut = 50.0;    // integrate numerically until (t/16) c xi^gamma reaches this
};

struct DensityBound {
    double value = 0.0;  // (4 pi)^-1 int exp(-(t/16) m(xi)) dxi
    bool finite = false;
    double envelope_c = 0.0;
    double envelope_gamma = 0.0;
    double cutoff = 0.0;
    double body = 0.0;  // numerically integrated part, before the (4 pi)^-1 factor
    double tail = 0.0;  // upper bound for the rest, before the (4 pi)^-1 factor
    std::string detail;
};

// m(xi) = inf_n inf_z Re q^n(z, xi) over the z grid, lowered to the symbol's
// structural floor where one is known.
double symbol_floor(std::span<const SymbolFn> family, double xi, std::span<const double> z_grid);

// Upper bound for sup p(t, x, y). Returns finite == false with a divergence
// warning in `detail` when no power-law lower envelope is detected.
DensityBound transition_density_bound(std::span<const SymbolFn> family, double t, const DensityOptions& opts = {});

}  // namespace levytype

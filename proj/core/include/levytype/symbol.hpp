#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levytype/levy_triplet.hpp"
#include "levytype/stability_index.hpp"

namespace levytype {

// Evaluator for a symbol q(x, xi) together with the metadata the diagnostics
// rely on. Immutable; cheap to copy (the evaluator is shared).
class SymbolFn {
public:
    using Evaluator = std::function<cplx(double x, double xi)>;
    using Floor = std::function<double(double xi)>;

    SymbolFn(std::string name, Evaluator eval, bool x_independent, bool real_valued, double growth_constant,
             std::vector<double> x_breakpoints = {}, Floor structural_floor = {});

    cplx operator()(double x, double xi) const { return eval_(x, xi); }

    const std::string& name() const { return name_; }
    bool x_independent() const { return x_independent_; }
    bool real_valued() const { return real_valued_; }
    // Claimed C with |q(x, xi)| <= C (1 + xi^2).
    double growth_constant() const { return growth_; }
    // Points in x across which q(., xi) may jump; diagnostics put grid points on both sides.
    const std::vector<double>& x_breakpoints() const { return x_breakpoints_; }
    // Certified lower bound for inf_x Re q(x, xi) derived from the symbol's structure.
    std::optional<double> structural_floor(double xi) const;

private:
    std::string name_;
    Evaluator eval_;
    bool x_independent_;
    bool real_valued_;
    double growth_;
    std::vector<double> x_breakpoints_;
    Floor floor_;
};

SymbolFn levy_symbol(const LevyTriplet& triplet);
// q(x, xi) = |xi|^alpha(x).
SymbolFn stable_like_symbol(const StabilityIndex& alpha);
// Same with an arbitrary index function (e.g. a mollified alpha_n) with values in [lo, hi].
SymbolFn stable_like_symbol(std::function<double(double)> alpha, double lo, double hi, std::string name);
// q(x, xi) = 1_{x <= 0} q_left(xi) + 1_{x > 0} q_right(xi).
SymbolFn glued_symbol(const LevyTriplet& left, const LevyTriplet& right);
// x-independent symbol from a closure; used for Hartman-Wintner style checks.
SymbolFn exponent_symbol(std::string name, std::function<cplx(double)> q, double growth_constant,
                         bool real_valued = true);

}  // namespace levytype

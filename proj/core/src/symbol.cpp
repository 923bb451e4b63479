#include "levytype/symbol.hpp"

#include <cmath>
#include <sstream>

namespace levytype {

SymbolFn::SymbolFn(std::string name, Evaluator eval, bool x_independent, bool real_valued, double growth_constant,
                   std::vector<double> x_breakpoints, Floor structural_floor)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      x_independent_(x_independent),
      real_valued_(real_valued),
      growth_(growth_constant),
      x_breakpoints_(std::move(x_breakpoints)),
      floor_(std::move(structural_floor)) {}

std::optional<double> SymbolFn::structural_floor(double xi) const {
    if (!floor_) return std::nullopt;
    return floor_(xi);
}

SymbolFn levy_symbol(const LevyTriplet& triplet) {
    triplet.validate();
    const bool real = triplet.drift == 0.0 && triplet.symmetric_jumps();
    return SymbolFn(
        "levy" + describe(triplet), [triplet](double, double xi) { return eval_levy_khinchine(triplet, xi); }, true,
        real, growth_constant(triplet));
}

SymbolFn stable_like_symbol(const StabilityIndex& alpha) {
    std::ostringstream name;
    name << "stable_like[" << alpha.inf() << ", " << alpha.sup() << "]";
    // |xi|^a <= 1 + xi^2 for a in (0, 2); the constant 2 leaves headroom.
    return SymbolFn(
        name.str(),
        [alpha](double x, double xi) {
            return xi == 0.0 ? cplx(0.0) : cplx(std::pow(std::abs(xi), alpha(x)), 0.0);
        },
        alpha.piece_count() == 1, true, 2.0, alpha.discontinuities(),
        [lo = alpha.inf(), hi = alpha.sup()](double xi) {
            const double a = std::abs(xi);
            return a == 0.0 ? 0.0 : std::min(std::pow(a, lo), std::pow(a, hi));
        });
}

SymbolFn stable_like_symbol(std::function<double(double)> alpha, double lo, double hi, std::string name) {
    return SymbolFn(
        std::move(name),
        [alpha = std::move(alpha)](double x, double xi) {
            return xi == 0.0 ? cplx(0.0) : cplx(std::pow(std::abs(xi), alpha(x)), 0.0);
        },
        lo == hi, true, 2.0, {},
        [lo, hi](double xi) {
            const double a = std::abs(xi);
            return a == 0.0 ? 0.0 : std::min(std::pow(a, lo), std::pow(a, hi));
        });
}

SymbolFn glued_symbol(const LevyTriplet& left, const LevyTriplet& right) {
    left.validate();
    right.validate();
    const bool real = left.drift == 0.0 && right.drift == 0.0 && left.symmetric_jumps() && right.symmetric_jumps();
    return SymbolFn(
        "glued" + describe(left) + describe(right),
        [left, right](double x, double xi) {
            return x <= 0.0 ? eval_levy_khinchine(left, xi) : eval_levy_khinchine(right, xi);
        },
        false, real, std::max(growth_constant(left), growth_constant(right)), {0.0},
        [left, right](double xi) {
            return std::min(eval_levy_khinchine(left, xi).real(), eval_levy_khinchine(right, xi).real());
        });
}

SymbolFn exponent_symbol(std::string name, std::function<cplx(double)> q, double growth_constant, bool real_valued) {
    return SymbolFn(
        std::move(name), [q = std::move(q)](double, double xi) { return q(xi); }, true, real_valued,
        growth_constant);
}

}  // namespace levytype

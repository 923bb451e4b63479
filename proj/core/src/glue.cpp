#include "levytype/glue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levytype/errors.hpp"

namespace levytype {

GlueWeights::GlueWeights(int n) : n_(n) {
    if (n < 1) throw DomainError("glue weights: n must be positive");
}

double GlueWeights::left(double x) const {
    if (x <= 0.0) return 1.0;
    const double v = 1.0 - n_ * x;
    return v > 0.0 ? v : 0.0;
}

SymbolFn glued_approx_symbol(const LevyTriplet& left, const LevyTriplet& right, int n) {
    left.validate();
    right.validate();
    const GlueWeights g(n);
    auto eval = [left, right, g](double x, double xi) {
        const double g1 = g.left(x);
        const double g2 = 1.0 - g1;
        return eval_levy_khinchine(left, g1 * xi) + eval_levy_khinchine(right, g2 * xi);
    };
    // One of the weights is at least 1/2, so inf_x Re q^n(x, xi) is bounded
    // below by min_i inf_{a in [1/2, 1]} Re q_i(a xi). The inner infimum is
    // taken on a 65-point grid in a.
    auto floor = [left, right](double xi) {
        double best = std::numeric_limits<double>::infinity();
        for (const LevyTriplet* t : {&left, &right}) {
            for (int i = 0; i <= 64; ++i) {
                const double a = 0.5 + 0.5 * i / 64.0;
                best = std::min(best, eval_levy_khinchine(*t, a * xi).real());
            }
        }
        return best;
    };
    const bool real = left.drift == 0.0 && right.drift == 0.0 && left.symmetric_jumps() && right.symmetric_jumps();
    return SymbolFn("glued-approx(n=" + std::to_string(n) + ")", eval, false, real,
                    growth_constant(left) + growth_constant(right), {0.0, 1.0 / n}, floor);
}

}  // namespace levytype

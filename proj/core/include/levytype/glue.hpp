#pragma once

#include "levytype/levy_triplet.hpp"
#include "levytype/symbol.hpp"

namespace levytype {

// g1(x) = 1 on (-inf, 0], 1 - n x on (0, 1/n), 0 on [1/n, inf); g2 = 1 - g1.
class GlueWeights {
public:
    explicit GlueWeights(int n);

    int n() const { return n_; }
    double left(double x) const;
    double right(double x) const { return 1.0 - left(x); }

private:
    int n_;
};

// q^n(x, xi) = q1(g1(x) xi) + q2(g2(x) xi).
SymbolFn glued_approx_symbol(const LevyTriplet& left, const LevyTriplet& right, int n);

}  // namespace levytype

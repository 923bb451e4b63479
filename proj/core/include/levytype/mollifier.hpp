#pragma once

#include <memory>
#include <span>
#include <vector>

#include "levytype/exceptional_sets.hpp"
#include "levytype/stability_index.hpp"

namespace levytype {

// phi_k(x) = k phi(k x) with phi = B / Z the normalised standard bump on (-1, 1).
class Mollifier {
public:
    explicit Mollifier(int k);

    int order() const { return k_; }
    double radius() const { return 1.0 / k_; }
    double operator()(double x) const;

    // Z = int_{-1}^{1} exp(-1/(1-t^2)) dt, computed once to ~1e-15.
    static double normalization();

private:
    int k_;
};

// Continuous extension alpha^(m) of alpha restricted to [-m, m] minus U_m.
//
// On the compact set K = [-m, m] \ U_m it equals alpha; across each bounded gap
// of K it interpolates linearly between the gap's end values, and beyond the
// outermost points of K it is constant. The extension keeps inf and sup of the
// restriction.
class ExtendedIndex {
public:
    ExtendedIndex(const StabilityIndex& alpha, const ExceptionalSets& sets, int m);

    double operator()(double x) const;

    int m() const { return m_; }
    // Compact pieces of [-m, m] \ U_m where the extension agrees with alpha.
    const std::vector<Interval>& agreement_set() const { return kept_; }
    // Points where the extension may fail to be differentiable.
    const std::vector<double>& kinks() const { return kinks_; }
    double inf() const { return inf_; }
    double sup() const { return sup_; }

private:
    StabilityIndex alpha_;
    int m_;
    std::vector<Interval> kept_;
    std::vector<double> kinks_;
    double inf_ = 0.0, sup_ = 0.0;
};

// alpha^(m),k = alpha^(m) * phi_k, evaluated pointwise by adaptive quadrature
// over the kernel support split at the kinks of alpha^(m). Written as
// alpha^(m)(x) + int (alpha^(m)(x - y) - alpha^(m)(x)) phi_k(y) dy, so the value
// is exactly alpha^(m)(x) wherever alpha^(m) is constant on (x - 1/k, x + 1/k).
class MollifiedIndex {
public:
    MollifiedIndex(ExtendedIndex base, int k);

    double operator()(double x) const;

    int m() const { return base_.m(); }
    int k() const { return k_; }
    const ExtendedIndex& base() const { return base_; }
    // Bounds inherited from the extension (convolution with a probability kernel).
    double inf() const { return base_.inf(); }
    double sup() const { return base_.sup(); }

private:
    ExtendedIndex base_;
    int k_;
};

// alpha^(m),k for the given m, k (exceptional sets built from alpha's discontinuities).
MollifiedIndex mollify_alpha(const StabilityIndex& alpha, int m, int k);

}  // namespace levytype

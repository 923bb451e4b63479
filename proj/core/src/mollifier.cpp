#include "levytype/mollifier.hpp"

#include <algorithm>
#include <cmath>

#include "levytype/errors.hpp"
#include "levytype/quadrature.hpp"
#include "levytype/test_function.hpp"

namespace levytype {

double Mollifier::normalization() {
    static const double z = [] {
        QuadratureOptions opts;
        opts.abs_tol = 1e-16;
        opts.rel_tol = 1e-15;
        return integrate([](double t) { return bump_profile(t); }, -1.0, 1.0, opts, "mollifier normalisation");
    }();
    return z;
}

Mollifier::Mollifier(int k) : k_(k) {
    if (k < 1) throw DomainError("mollifier: order k must be positive");
}

double Mollifier::operator()(double x) const { return k_ * bump_profile(k_ * x) / normalization(); }

ExtendedIndex::ExtendedIndex(const StabilityIndex& alpha, const ExceptionalSets& sets, int m)
    : alpha_(alpha), m_(m) {
    if (m < 1) throw DomainError("extension: m must be positive");
    kept_ = sets.complement_within(m, {-static_cast<double>(m), static_cast<double>(m)});
    if (kept_.empty()) throw DomainError("extension: [-m, m] is covered by U_m");

    inf_ = 2.0;
    sup_ = 0.0;
    auto note = [&](double v) {
        inf_ = std::min(inf_, v);
        sup_ = std::max(sup_, v);
    };
    for (const auto& piece : kept_) {
        kinks_.push_back(piece.lo);
        if (piece.hi > piece.lo) kinks_.push_back(piece.hi);
        note(alpha_(piece.lo));
        note(alpha_(piece.hi));
        for (double d : alpha_.breakpoints()) {
            if (d > piece.lo && d < piece.hi) {
                kinks_.push_back(d);
                note(alpha_(d));
            }
        }
    }
    std::sort(kinks_.begin(), kinks_.end());
    kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
}

double ExtendedIndex::operator()(double x) const {
    if (x <= kept_.front().lo) return alpha_(kept_.front().lo);
    if (x >= kept_.back().hi) return alpha_(kept_.back().hi);
    auto it = std::upper_bound(kept_.begin(), kept_.end(), x, [](double v, const Interval& p) { return v < p.lo; });
    const Interval& here = *(it - 1);
    if (x <= here.hi) return alpha_(x);
    const Interval& next = *it;
    const double a = alpha_(here.hi);
    const double b = alpha_(next.lo);
    const double w = (x - here.hi) / (next.lo - here.hi);
    return a + (b - a) * w;
}

MollifiedIndex::MollifiedIndex(ExtendedIndex base, int k) : base_(std::move(base)), k_(k) {
    if (k < 1) throw DomainError("mollified index: k must be positive");
}

double MollifiedIndex::operator()(double x) const {
    const double centre = base_(x);
    const double h = 1.0 / k_;
    const auto& kinks = base_.kinks();

    // Breakpoints of the integrand in the kernel variable t = k y in [-1, 1].
    std::vector<double> breaks{-1.0};
    auto lo = std::upper_bound(kinks.begin(), kinks.end(), x - h);
    auto hi = std::lower_bound(kinks.begin(), kinks.end(), x + h);
    std::vector<double> inner;
    for (auto it = lo; it != hi; ++it) inner.push_back(k_ * (x - *it));
    std::sort(inner.begin(), inner.end());
    for (double t : inner)
        if (t > breaks.back() && t < 1.0) breaks.push_back(t);
    breaks.push_back(1.0);

    // Without a kink in the window the extension is affine there and the
    // symmetric kernel reproduces the centre value.
    if (breaks.size() == 2) {
        const double left = base_(x - h), right = base_(x + h);
        if (std::abs((left + right) - 2.0 * centre) <= 1e-15) return centre;
    }

    QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-14;
    const double z = Mollifier::normalization();
    const double correction = integrate(
        [&](double t) {
            const double b = bump_profile(t);
            if (b == 0.0) return 0.0;
            return (base_(x - t * h) - centre) * b;
        },
        std::span<const double>(breaks), opts, "mollified index");
    return centre + correction / z;
}

MollifiedIndex mollify_alpha(const StabilityIndex& alpha, int m, int k) {
    const auto d = alpha.discontinuities();
    return MollifiedIndex(ExtendedIndex(alpha, build_exceptional_sets(d, m), m), k);
}

}  // namespace levytype

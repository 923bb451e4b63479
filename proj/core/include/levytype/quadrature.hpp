#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "levytype/errors.hpp"

namespace levytype {

struct QuadratureOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_panels = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    bool converged = false;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached per order; safe to call from several threads.
const GaussLegendreRule& gauss_legendre(int order);

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

template <class F>
Panel kronrod15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration of f over the
// concatenation of [breaks[i], breaks[i+1]]. Panels are bisected in order of
// decreasing error estimate until the total estimate drops below
// max(abs_tol, rel_tol * |value|) or the panel budget is exhausted.
template <class F>
QuadratureResult integrate_adaptive(F&& f, std::span<const double> breaks,
                                    const QuadratureOptions& opts = {}) {
    QuadratureResult out;
    if (breaks.size() < 2) return out;
    std::vector<detail::Panel> heap;
    heap.reserve(64);
    auto cmp = [](const detail::Panel& l, const detail::Panel& r) { return l.error < r.error; };
    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        heap.push_back(detail::kronrod15(f, breaks[i], breaks[i + 1]));
        value += heap.back().value;
        error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), cmp);
    int panels = static_cast<int>(heap.size());
    while (!heap.empty() && error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
        if (panels >= opts.max_panels) break;
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval collapsed to machine resolution; keep its estimate.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        const detail::Panel left = detail::kronrod15(f, worst.a, mid);
        const detail::Panel right = detail::kronrod15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++panels;
    }
    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    for (const auto& p : heap) {
        value += p.value;
        error += p.error;
    }
    out.value = value;
    out.error = error;
    out.panels = panels;
    out.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    return out;
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
    const std::array<double, 2> breaks{a, b};
    return integrate_adaptive(std::forward<F>(f), std::span<const double>(breaks), opts);
}

// Same as integrate_adaptive but throws NumericError (with diagnostics) when
// the tolerance is not met within the panel cap.
template <class F>
double integrate(F&& f, std::span<const double> breaks, const QuadratureOptions& opts = {},
                 const char* what = "integral") {
    const QuadratureResult r = integrate_adaptive(std::forward<F>(f), breaks, opts);
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << ": quadrature did not converge on [" << breaks.front() << ", "
            << breaks.back() << "] (value " << r.value << ", error estimate " << r.error
            << ", panels " << r.panels << "/" << opts.max_panels << ")";
        throw NumericError(msg.str());
    }
    return r.value;
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opts = {},
                 const char* what = "integral") {
    const std::array<double, 2> breaks{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(breaks), opts, what);
}

// Fixed composite Gauss-Legendre rule: `panels` equal panels on [a, b].
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int order = 20) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double c = lo + 0.5 * width;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + 0.5 * width * rule.nodes[i]);
        total += 0.5 * width * s;
    }
    return total;
}

}  // namespace levytype

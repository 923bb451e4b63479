#include "levytype/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "levytype/errors.hpp"
#include "levytype/quadrature.hpp"

namespace levytype {

double symbol_sup_near_zero(const SymbolFn& q, double r, std::span<const double> x_grid) {
    double worst = 0.0;
    for (double x : x_grid)
        for (int i = 0; i <= 200; ++i) worst = std::max(worst, std::abs(q(x, -r + 2.0 * r * i / 200.0)));
    return worst;
}

double empirical_growth_constant(const SymbolFn& q, std::span<const double> x_grid, std::span<const double> xi_grid) {
    double worst = 0.0;
    for (double x : x_grid)
        for (double xi : xi_grid) worst = std::max(worst, std::abs(q(x, xi)) / (1.0 + xi * xi));
    return worst;
}

ExitCheck exit_probability_check(const PathEnsemble& e, const SymbolFn& q, double radius, double t, ExitConstant which) {
    double x0 = 0.0;
    if (!e.point_started(&x0)) throw InputError("exit check: ensemble is not started from a point mass");
    if (!(radius > 0.0)) throw InputError("exit check: radius must be positive");
    const std::size_t k_end = e.step_of(t);

    ExitCheck c;
    c.radius = radius;
    c.t = t;
    c.paths = e.paths;
    for (std::size_t p = 0; p < e.paths; ++p) {
        const auto path = e.path(p);
        for (std::size_t k = 0; k <= k_end; ++k) {
            if (std::abs(path[k] - x0) >= radius) {
                ++c.exceedances;
                break;
            }
        }
    }
    c.frequency = e.paths ? static_cast<double>(c.exceedances) / e.paths : 0.0;
    c.stderr_ = e.paths ? std::sqrt(c.frequency * (1.0 - c.frequency) / e.paths) : 0.0;

    // x grid: the starting point, the symbol's breakpoints and a band around both.
    std::vector<double> xs{x0};
    if (!q.x_independent()) {
        for (int i = 0; i <= 200; ++i) xs.push_back(x0 - 2.0 * radius + 4.0 * radius * i / 200.0);
        for (double d : q.x_breakpoints()) {
            xs.push_back(d);
            xs.push_back(d + 1e-9);
        }
    }
    std::vector<double> xis{0.0};
    for (double s = 1e-4; s <= 1e4 * (1 + 1e-12); s *= std::pow(10.0, 0.05)) {
        xis.push_back(s);
        xis.push_back(-s);
    }
    c.claimed_constant = q.growth_constant();
    c.empirical_constant = empirical_growth_constant(q, xs, xis);
    c.constant = which == ExitConstant::Claimed ? c.claimed_constant : c.empirical_constant;
    c.symbol_sup = symbol_sup_near_zero(q, 1.0 / radius, xs);
    c.bound = c.constant * t * c.symbol_sup;
    c.margin = c.bound > 0.0 ? c.frequency / c.bound : (c.frequency > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

    if (c.frequency <= c.bound + 3.0 * c.stderr_) {
        c.verdict = Verdict::Pass;
    } else if (c.frequency <= 2.0 * c.bound + 3.0 * c.stderr_) {
        c.verdict = Verdict::Warn;
    } else {
        c.verdict = Verdict::Fail;
    }
    std::ostringstream d;
    d << "frequency " << c.frequency << " +- " << c.stderr_ << " vs bound " << c.bound << " (C = " << c.constant
      << (which == ExitConstant::Claimed ? " claimed" : " empirical") << ", sup|q| = " << c.symbol_sup
      << ", margin " << c.margin << ")";
    c.detail = d.str();
    return c;
}

double symbol_floor(std::span<const SymbolFn> family, double xi, std::span<const double> z_grid) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& q : family) {
        if (q.x_independent()) {
            m = std::min(m, q(0.0, xi).real());
        } else {
            for (double z : z_grid) m = std::min(m, q(z, xi).real());
        }
        if (const auto f = q.structural_floor(xi)) m = std::min(m, *f);
    }
    return m;
}

namespace {

// Upper bound for Gamma(s, u), u > 0.
double upper_gamma_bound(double s, double u) {
    if (s <= 1.0) return std::pow(u, s - 1.0) * std::exp(-u);
    if (u > 2.0 * (s - 1.0)) return 2.0 * std::pow(u, s - 1.0) * std::exp(-u);
    return std::tgamma(s);
}

}  // namespace

DensityBound transition_density_bound(std::span<const SymbolFn> family, double t, const DensityOptions& opts) {
    if (family.empty()) throw InputError("density bound: empty symbol family");
    if (!(t > 0.0)) throw DomainError("density bound: t must be positive");
    std::vector<double> z = opts.z_grid;
    if (z.empty()) {
        for (int i = 0; i <= 200; ++i) z.push_back(-5.0 + 10.0 * i / 200.0);
        for (const auto& q : family)
            for (double d : q.x_breakpoints()) {
                z.push_back(d);
                z.push_back(d + 1e-9);
            }
    }
    auto m = [&](double xi) { return std::min(symbol_floor(family, xi, z), symbol_floor(family, -xi, z)); };

    DensityBound out;
    // Power envelope c xi^gamma below m on the fit shells.
    const auto shells = geometric_shells(opts.fit_lo, opts.fit_hi, opts.fit_shells);
    std::vector<double> lx, ly;
    for (double s : shells) {
        const double v = m(s);
        if (!(v > 0.0)) {
            out.detail = "divergent bound: Re q not positive on the envelope shells";
            return out;
        }
        lx.push_back(std::log(s));
        ly.push_back(std::log(v));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double gamma = sxy / sxx;
    if (!(gamma > 0.05)) {
        std::ostringstream d;
        d << "divergent bound: no power-law lower envelope (fitted exponent " << gamma << ")";
        out.detail = d.str();
        return out;
    }
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lx.size(); ++i) c = std::min(c, std::exp(ly[i] - gamma * lx[i]));
    // A slowly varying symbol (log-like) can look like a weak power on the fit
    // shells; the tail estimate relies on the envelope far beyond them.
    for (double s : geometric_shells(opts.fit_hi, std::max(opts.probe_hi, 2.0 * opts.fit_hi), opts.fit_shells)) {
        const double v = m(s);
        const double env = c * std::pow(s, gamma);
        if (!(v >= env * (1.0 - 1e-9))) {
            std::ostringstream d;
            d << "divergent bound: envelope " << c << " |xi|^" << gamma << " fails at |xi| = " << s << " (Re q = " << v
              << ")";
            out.detail = d.str();
            return out;
        }
    }
    out.envelope_c = c;
    out.envelope_gamma = gamma;

    const double rate = t / 16.0 * c;
    out.cutoff = std::max(opts.fit_hi, std::pow(opts.exponent_cut / rate, 1.0 / gamma));

    // Body on [0, cutoff] for both signs of xi, split geometrically so the
    // adaptive rule sees the decay scale.
    std::vector<double> breaks{0.0};
    for (double b = 1e-3; b < out.cutoff; b *= 4.0) breaks.push_back(b);
    breaks.push_back(out.cutoff);
    QuadratureOptions q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-13;
    q.max_panels = 20000;
    auto integrand = [&](double xi) {
        double s = 0.0;
        for (double sign : {-1.0, 1.0}) s += std::exp(-t / 16.0 * symbol_floor(family, sign * xi, z));
        return s;
    };
    out.body = integrate(integrand, std::span<const double>(breaks), q, "density bound");
    // Tail: 2 int_cut^inf exp(-rate xi^gamma) dxi = (2 / gamma) rate^(-1/gamma) Gamma(1/gamma, rate cut^gamma).
    const double sg = 1.0 / gamma;
    out.tail = 2.0 * sg * std::pow(rate, -sg) * upper_gamma_bound(sg, rate * std::pow(out.cutoff, gamma));
    out.value = (out.body + out.tail) / (4.0 * std::numbers::pi);
    out.finite = std::isfinite(out.value);
    std::ostringstream d;
    d << "envelope " << c << " |xi|^" << gamma << ", numeric part up to " << out.cutoff << ", tail bound "
      << out.tail / (4.0 * std::numbers::pi);
    out.detail = d.str();
    return out;
}

}  // namespace levytype

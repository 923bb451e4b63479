#include "levytype/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "levytype/errors.hpp"
#include "levytype/glue.hpp"
#include "levytype/quadrature.hpp"

namespace levytype {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// One Levy generator scaled in space by `weight`: the operator with symbol
// q(weight * xi), i.e. the generator of weight * L.
struct Component {
    double weight;
    LevyTriplet triplet;
};

std::vector<Component> frozen_components(const GeneratorSpec& spec, double x) {
    return std::visit(
        overloaded{
            [](const LevyGenerator& g) { return std::vector<Component>{{1.0, g.triplet}}; },
            [x](const StableLikeGenerator& g) { return std::vector<Component>{{1.0, symmetric_stable(g.alpha(x))}}; },
            [x](const GluedGenerator& g) {
                return std::vector<Component>{{1.0, x <= 0.0 ? g.left : g.right}};
            },
            [x](const GluedApproxGenerator& g) {
                const GlueWeights w(g.n);
                const double g1 = w.left(x);
                const double g2 = 1.0 - g1;
                std::vector<Component> out;
                if (g1 > 0.0) out.push_back({g1, g.left});
                if (g2 > 0.0) out.push_back({g2, g.right});
                return out;
            },
            [x](const StableLikeApproxGenerator& g) {
                return std::vector<Component>{{1.0, symmetric_stable((*g.alpha)(x))}};
            },
        },
        spec);
}

// int_0^t u^(p - 1 - alpha) e^(-lambda u) du by its power series; callers keep lambda t <= 1.
double lower_moment(double p, double alpha, double lambda, double t) {
    const double s = p - alpha;
    double sum = 0.0, term = 1.0;
    for (int k = 0; k < 40; ++k) {
        const double piece = term * std::pow(t, s + k) / (s + k);
        sum += piece;
        if (std::abs(piece) < 1e-18 * std::abs(sum)) break;
        term *= -lambda / (k + 1);
    }
    return sum;
}

// int_0^inf (f(x+u) + f(x-u) - 2 f(x)) scale e^(-lambda u) u^(-1-alpha) du.
double symmetric_kernel_integral(const TestFn& f, double x, double alpha, double scale, double lambda,
                                 const GeneratorOptions& opts) {
    const Interval supp = f.support();
    const double fx = f(x);
    const double reach = std::max(std::abs(x - supp.lo), std::abs(x - supp.hi));

    double u_t = 1e-3 * f.min_radius();
    if (lambda > 0.0) u_t = std::min(u_t, 1.0 / lambda);
    u_t = std::min(u_t, reach);

    // Inner part from the Taylor expansion D(u) = f'' u^2 + f'''' u^4 / 12 + O(u^6).
    const double inner = scale * (f.derivative(x, 2) * lower_moment(2.0, alpha, lambda, u_t) +
                                  f.derivative(x, 4) / 12.0 * lower_moment(4.0, alpha, lambda, u_t));

    // Middle part in log coordinates, split where x +- u crosses a bump edge.
    double middle = 0.0;
    if (reach > u_t) {
        std::vector<double> breaks{std::log(u_t)};
        std::vector<double> edges;
        for (const Bump& b : f.terms()) {
            for (double e : {b.center - b.radius, b.center, b.center + b.radius}) {
                const double u = std::abs(e - x);
                if (u > u_t && u < reach) edges.push_back(std::log(u));
            }
        }
        std::sort(edges.begin(), edges.end());
        for (double s : edges)
            if (s > breaks.back() + 1e-12) breaks.push_back(s);
        if (std::log(reach) > breaks.back()) {
            breaks.push_back(std::log(reach));
        } else {
            breaks.back() = std::log(reach);
        }
        QuadratureOptions q{opts.abs_tol, opts.rel_tol, opts.max_panels};
        middle = integrate(
            [&](double s) {
                const double u = std::exp(s);
                const double d = f(x + u) + f(x - u) - 2.0 * fx;
                if (d == 0.0) return 0.0;
                return d * scale * std::exp(-lambda * u) * std::pow(u, -alpha);
            },
            std::span<const double>(breaks), q, "generator jump integral");
    }

    // Beyond the reach both f(x + u) and f(x - u) vanish.
    double tail = 0.0;
    if (fx != 0.0) {
        const double start = std::max(reach, u_t);
        if (lambda == 0.0) {
            tail = -2.0 * fx * scale * std::pow(start, -alpha) / alpha;
        } else {
            const double stop = std::log(start + 45.0 / lambda);
            QuadratureOptions q{opts.abs_tol, opts.rel_tol, opts.max_panels};
            tail = -2.0 * fx * scale *
                   integrate(
                       [&](double s) {
                           const double u = std::exp(s);
                           return std::exp(-lambda * u) * std::pow(u, -alpha);
                       },
                       std::log(start), stop, q, "generator tail integral");
        }
    }
    return inner + middle + tail;
}

// E f(x + w Y) for one jump law, integrated over the part of the law that can reach supp f.
double shifted_expectation(const TestFn& f, double x, double w, const JumpDistribution& dist,
                           const GeneratorOptions& opts) {
    const Interval supp = f.support();
    std::vector<double> edges;
    for (const Bump& b : f.terms())
        for (double e : {b.center - b.radius, b.center, b.center + b.radius}) edges.push_back((e - x) / w);
    auto span_in = [&](double lo, double hi) {
        std::vector<double> br{lo};
        std::sort(edges.begin(), edges.end());
        for (double e : edges)
            if (e > br.back() && e < hi) br.push_back(e);
        br.push_back(hi);
        return br;
    };
    const double ylo = (supp.lo - x) / w, yhi = (supp.hi - x) / w;
    QuadratureOptions q{opts.abs_tol, opts.rel_tol, opts.max_panels};
    return std::visit(
        overloaded{
            [&](const PointJump& p) { return f(x + w * p.value); },
            [&](const NormalJump& n) {
                const auto br = span_in(ylo, yhi);
                return integrate(
                    [&](double y) {
                        const double z = (y - n.mean) / n.sd;
                        return f(x + w * y) * std::exp(-0.5 * z * z) / (n.sd * std::sqrt(2.0 * std::numbers::pi));
                    },
                    std::span<const double>(br), q, "compound Poisson expectation");
            },
            [&](const UniformJump& u) {
                const double lo = std::max(ylo, u.lo), hi = std::min(yhi, u.hi);
                if (!(hi > lo)) return 0.0;
                const auto br = span_in(lo, hi);
                return integrate([&](double y) { return f(x + w * y); }, std::span<const double>(br), q,
                                 "compound Poisson expectation") /
                       (u.hi - u.lo);
            },
        },
        dist);
}

double component_integral(const Component& c, const TestFn& f, double x, const GeneratorOptions& opts) {
    const double w = c.weight;
    const LevyTriplet& t = c.triplet;
    const double f1 = f.derivative(x, 1);
    double local = w * t.drift * f1 + 0.5 * w * w * t.diffusion * f.derivative(x, 2);
    // The compensator indicator is 1_{|y| <= 1} in the unscaled variable, which
    // keeps the symbol of this operator equal to q(w xi).
    const double jump = std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [&](const StableJumps& s) {
                return symmetric_kernel_integral(f, x, s.alpha, s.scale * std::pow(w, s.alpha), 0.0, opts);
            },
            [&](const TemperedStableJumps& s) {
                return symmetric_kernel_integral(f, x, s.alpha, s.scale * std::pow(w, s.alpha), s.lambda / w, opts);
            },
            [&](const CompoundPoissonJumps& cp) {
                const double m1 = compensator_drift(cp, 0.0) / cp.rate;
                return cp.rate * (shifted_expectation(f, x, w, cp.distribution, opts) - f(x) - w * f1 * m1);
            },
            [&](const AtomicJumps& a) {
                double s = 0.0;
                const double fx = f(x);
                for (const Atom& at : a.atoms) {
                    const double comp = std::abs(at.location) <= 1.0 ? w * at.location * f1 : 0.0;
                    s += at.weight * (f(x + w * at.location) - fx - comp);
                }
                return s;
            },
        },
        t.jumps);
    return local + jump;
}

}  // namespace

void validate(const GeneratorSpec& spec) {
    std::visit(overloaded{
                   [](const LevyGenerator& g) { g.triplet.validate(); },
                   [](const StableLikeGenerator&) {},
                   [](const GluedGenerator& g) {
                       g.left.validate();
                       g.right.validate();
                   },
                   [](const GluedApproxGenerator& g) {
                       g.left.validate();
                       g.right.validate();
                       if (g.n < 1) throw DomainError("glued approximation: n must be positive");
                   },
                   [](const StableLikeApproxGenerator& g) {
                       if (!g.alpha) throw InputError("stable-like approximation: missing index");
                       if (!(g.alpha->inf() > 0.0 && g.alpha->sup() < 2.0))
                           throw DomainError("stable-like approximation: index outside (0, 2) (S2)");
                   },
               },
               spec);
}

std::string describe(const GeneratorSpec& spec) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const LevyGenerator& g) { os << "levy" << describe(g.triplet); },
                   [&](const StableLikeGenerator& g) {
                       os << "stable-like[" << g.alpha.inf() << ", " << g.alpha.sup() << "]";
                   },
                   [&](const GluedGenerator& g) { os << "glued" << describe(g.left) << describe(g.right); },
                   [&](const GluedApproxGenerator& g) {
                       os << "glued-approx(n=" << g.n << ")" << describe(g.left) << describe(g.right);
                   },
                   [&](const StableLikeApproxGenerator& g) {
                       os << "stable-like-approx(m=" << g.alpha->m() << ", k=" << g.alpha->k() << ")";
                   },
               },
               spec);
    return os.str();
}

SymbolFn symbol_of(const GeneratorSpec& spec) {
    return std::visit(overloaded{
                          [](const LevyGenerator& g) { return levy_symbol(g.triplet); },
                          [](const StableLikeGenerator& g) { return stable_like_symbol(g.alpha); },
                          [](const GluedGenerator& g) { return glued_symbol(g.left, g.right); },
                          [](const GluedApproxGenerator& g) { return glued_approx_symbol(g.left, g.right, g.n); },
                          [](const StableLikeApproxGenerator& g) {
                              auto a = g.alpha;
                              return stable_like_symbol([a](double x) { return (*a)(x); }, a->inf(), a->sup(),
                                                        describe(GeneratorSpec{g}));
                          },
                      },
                      spec);
}

std::vector<double> generator_breakpoints(const GeneratorSpec& spec) {
    return std::visit(overloaded{
                          [](const LevyGenerator&) { return std::vector<double>{}; },
                          [](const StableLikeGenerator& g) { return g.alpha.discontinuities(); },
                          [](const GluedGenerator&) { return std::vector<double>{0.0}; },
                          [](const GluedApproxGenerator&) { return std::vector<double>{}; },
                          [](const StableLikeApproxGenerator&) { return std::vector<double>{}; },
                      },
                      spec);
}

double apply_generator_integral(const GeneratorSpec& spec, const TestFn& f, double x, const GeneratorOptions& opts) {
    double total = 0.0;
    for (const Component& c : frozen_components(spec, x)) total += component_integral(c, f, x, opts);
    return total;
}

FourierEvaluation apply_generator_fourier_detailed(const GeneratorSpec& spec, const TestFn& f, double x,
                                                   const GeneratorOptions& opts) {
    const SymbolFn q = symbol_of(spec);
    const double c_growth = q.growth_constant();
    FourierEvaluation out;
    for (const Bump& b : f.terms()) {
        const double theta = (x - b.center) / b.radius;
        if (std::abs(theta) > 20.0) {
            std::ostringstream msg;
            msg << "fourier route: x = " << x << " is " << std::abs(theta)
                << " radii from a bump centre; the oscillatory quadrature is limited to 20";
            throw NumericError(msg.str());
        }
        // Tail bound: 2 |a| C int_W^inf (1 + w^2 / r^2) 0.4 w^(-3/4) e^(-sqrt w) dw, with
        // Gamma(s, v) <= 2 v^(s-1) e^(-v) for v >= 2 (s - 1).
        const double inv_r2 = 1.0 / (b.radius * b.radius);
        auto tail = [&](double w) {
            const double v = std::sqrt(w);
            const double g_half = 2.0 * std::exp(-v) / std::sqrt(v);
            const double g_nine = 2.0 * 2.0 * std::pow(v, 3.5) * std::exp(-v);
            return 2.0 * std::abs(b.amplitude) * c_growth * 0.4 * (g_half + inv_r2 * g_nine);
        };
        double cutoff = 64.0;
        const double limit = bump_fourier_table_limit();
        while (tail(cutoff) > opts.fourier_tail_tol) {
            cutoff += 16.0;
            if (cutoff > limit) {
                std::ostringstream msg;
                msg << "fourier route: truncation tail " << tail(limit) << " above " << opts.fourier_tail_tol
                    << " at the table limit " << limit;
                throw NumericError(msg.str());
            }
        }
        cplx sum = 0.0;
        for (const FourierNode& node : bump_fourier_nodes(cutoff)) {
            const double xi = node.omega / b.radius;
            const cplx phase = std::polar(1.0, theta * node.omega);
            sum += node.weight * node.profile * (phase * q(x, xi) + std::conj(phase) * q(x, -xi));
        }
        out.value -= b.amplitude * sum.real();
        out.imag_residual -= b.amplitude * sum.imag();
        out.cutoff = std::max(out.cutoff, cutoff);
    }
    return out;
}

double apply_generator_fourier(const GeneratorSpec& spec, const TestFn& f, double x, const GeneratorOptions& opts) {
    return apply_generator_fourier_detailed(spec, f, x, opts).value;
}

std::vector<double> region_grid(std::span<const Interval> region, int points_per_unit) {
    if (region.empty()) throw InputError("region grid: empty region");
    std::vector<double> grid;
    for (const Interval& iv : region) {
        if (!(iv.hi >= iv.lo)) throw InputError("region grid: interval with hi < lo");
        const int cells = std::max(1, static_cast<int>(std::ceil(iv.length() * points_per_unit)));
        for (int i = 0; i < cells; ++i) grid.push_back(iv.lo + iv.length() * i / cells);
        grid.push_back(iv.hi);
    }
    return grid;
}

double generator_difference_sup(const GeneratorSpec& a, const GeneratorSpec& b, const TestFn& f,
                                std::span<const Interval> region, int points_per_unit,
                                const GeneratorOptions& opts) {
    double worst = 0.0;
    for (double x : region_grid(region, points_per_unit))
        worst = std::max(worst,
                         std::abs(apply_generator_integral(a, f, x, opts) - apply_generator_integral(b, f, x, opts)));
    return worst;
}

double fourier_weighted_norm(const TestFn& f, double growth_constant) {
    // Single bump: int C (1 + xi^2) |a| r |B^(r xi)| dxi = 2 C |a| int_0^inf (1 + w^2 / r^2) |B^(w)| dw.
    double total = 0.0;
    const auto nodes = bump_fourier_nodes(bump_fourier_table_limit());
    for (const Bump& b : f.terms()) {
        double s = 0.0;
        for (const FourierNode& node : nodes)
            s += node.weight * std::abs(node.profile) * (1.0 + node.omega * node.omega / (b.radius * b.radius));
        total += 2.0 * growth_constant * std::abs(b.amplitude) * s;
    }
    return total;
}

}  // namespace levytype

#include "levytype/levy_triplet.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "levytype/errors.hpp"
#include "levytype/quadrature.hpp"

namespace levytype {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// E[J ; lo < J < hi] for J ~ N(mean, sd^2).
double normal_partial_mean(const NormalJump& d, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    const double a = (lo - d.mean) / d.sd;
    const double b = (hi - d.mean) / d.sd;
    return d.mean * (normal_cdf(b) - normal_cdf(a)) + d.sd * (normal_pdf(a) - normal_pdf(b));
}

// int_{lo}^{hi} y dy / (d.hi - d.lo), restricted to the support.
double uniform_partial_mean(const UniformJump& d, double lo, double hi) {
    const double l = std::max(lo, d.lo);
    const double u = std::min(hi, d.hi);
    if (!(u > l)) return 0.0;
    return (u * u - l * l) / (2.0 * (d.hi - d.lo));
}

double uniform_partial_mass(const UniformJump& d, double lo, double hi) {
    const double l = std::max(lo, d.lo);
    const double u = std::min(hi, d.hi);
    if (!(u > l)) return 0.0;
    return (u - l) / (d.hi - d.lo);
}

// int_0^inf (1 - cos(xi y)) e^{-lambda y} y^{-1-alpha} dy.
double tempered_half_exponent(double alpha, double lambda, double xi) {
    xi = std::abs(xi);
    if (xi == 0.0) return 0.0;
    const double radius = std::hypot(lambda, xi);
    const double theta = std::atan2(xi, lambda);
    // The closed form reads Gamma(2-a)/a * (g(a) - g(1)) / (a - 1) with
    // g(s) = lambda^s - radius^s cos(s theta) and g(1) = 0. Near a = 1 the
    // difference quotient is replaced by the mean of g' over [1, a].
    auto g = [&](double s) { return std::pow(lambda, s) - std::pow(radius, s) * std::cos(s * theta); };
    auto dg = [&](double s) {
        return std::pow(lambda, s) * std::log(lambda) -
               std::pow(radius, s) * (std::log(radius) * std::cos(s * theta) - theta * std::sin(s * theta));
    };
    double quotient;
    if (std::abs(alpha - 1.0) < 0.05) {
        if (alpha == 1.0) {
            quotient = dg(1.0);
        } else {
            const GaussLegendreRule& rule = gauss_legendre(10);
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                s += rule.weights[i] * dg(1.0 + 0.5 * (alpha - 1.0) * (1.0 + rule.nodes[i]));
            quotient = 0.5 * s;
        }
    } else {
        quotient = g(alpha) / (alpha - 1.0);
    }
    return std::tgamma(2.0 - alpha) / alpha * quotient;
}

// int_eps^inf e^{-lambda y} y^{-1-alpha} dy, eps > 0.
double tempered_tail(double alpha, double lambda, double eps) {
    // Substitute y = eps e^u; the integrand becomes eps^-alpha e^{-alpha u} e^{-lambda eps e^u}.
    const double upper = std::log1p(60.0 / (lambda * eps) + 1.0);
    auto f = [&](double u) {
        return std::pow(eps, -alpha) * std::exp(-alpha * u - lambda * eps * std::exp(u));
    };
    QuadratureOptions opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-12;
    return integrate(f, 0.0, upper, opts, "tempered tail mass");
}

cplx jump_distribution_cf(const JumpDistribution& dist, double xi) {
    return std::visit(
        overloaded{
            [&](const PointJump& d) { return std::exp(cplx(0.0, xi * d.value)); },
            [&](const NormalJump& d) {
                return std::exp(cplx(-0.5 * d.sd * d.sd * xi * xi, d.mean * xi));
            },
            [&](const UniformJump& d) {
                return std::exp(cplx(0.0, 0.5 * xi * (d.lo + d.hi))) * sinc(0.5 * xi * (d.hi - d.lo));
            },
        },
        dist);
}

// E[J ; eps < |J| <= 1].
double jump_distribution_band_mean(const JumpDistribution& dist, double eps) {
    if (eps >= 1.0) return 0.0;
    return std::visit(overloaded{
                          [&](const PointJump& d) {
                              const double r = std::abs(d.value);
                              return (r > eps && r <= 1.0) ? d.value : 0.0;
                          },
                          [&](const NormalJump& d) {
                              return normal_partial_mean(d, -1.0, -eps) + normal_partial_mean(d, eps, 1.0);
                          },
                          [&](const UniformJump& d) {
                              return uniform_partial_mean(d, -1.0, -eps) + uniform_partial_mean(d, eps, 1.0);
                          },
                      },
                      dist);
}

double jump_distribution_tail(const JumpDistribution& dist, double eps) {
    return std::visit(overloaded{
                          [&](const PointJump& d) { return std::abs(d.value) > eps ? 1.0 : 0.0; },
                          [&](const NormalJump& d) {
                              return normal_cdf((-eps - d.mean) / d.sd) +
                                     normal_cdf((d.mean - eps) / d.sd);
                          },
                          [&](const UniformJump& d) {
                              return uniform_partial_mass(d, -kInf, -eps) + uniform_partial_mass(d, eps, kInf);
                          },
                      },
                      dist);
}

// E[min(1, J^2)].
double jump_distribution_truncated_second_moment(const JumpDistribution& dist) {
    return std::visit(
        overloaded{
            [&](const PointJump& d) { return std::min(1.0, d.value * d.value); },
            [&](const NormalJump& d) {
                auto f = [&](double y) {
                    const double z = (y - d.mean) / d.sd;
                    return y * y * normal_pdf(z) / d.sd;
                };
                const double inner = integrate(f, -1.0, 1.0, {}, "normal jump second moment");
                return inner + jump_distribution_tail(JumpDistribution{d}, 1.0);
            },
            [&](const UniformJump& d) {
                const double l = std::max(-1.0, d.lo), u = std::min(1.0, d.hi);
                const double inner = (u > l) ? (u * u * u - l * l * l) / (3.0 * (d.hi - d.lo)) : 0.0;
                return inner + uniform_partial_mass(d, -kInf, -1.0) + uniform_partial_mass(d, 1.0, kInf);
            },
        },
        dist);
}

void validate_jumps(const JumpMeasure& jumps) {
    auto fail = [](const std::string& what) { throw InvalidMeasureError(what); };
    std::visit(overloaded{
                   [](const NoJumps&) {},
                   [&](const StableJumps& j) {
                       if (!(j.alpha > 0.0 && j.alpha < 2.0))
                           fail("stable jump measure needs 0 < alpha < 2, got " + std::to_string(j.alpha));
                       if (!(j.scale > 0.0 && std::isfinite(j.scale)))
                           fail("stable jump measure needs scale h > 0");
                   },
                   [&](const TemperedStableJumps& j) {
                       if (!(j.alpha > 0.0 && j.alpha < 2.0))
                           fail("tempered stable jump measure needs 0 < alpha < 2, got " +
                                std::to_string(j.alpha));
                       if (!(j.lambda > 0.0 && std::isfinite(j.lambda)))
                           fail("tempered stable jump measure needs lambda > 0");
                       if (!(j.scale > 0.0 && std::isfinite(j.scale)))
                           fail("tempered stable jump measure needs scale > 0");
                   },
                   [&](const CompoundPoissonJumps& j) {
                       if (!(j.rate >= 0.0 && std::isfinite(j.rate)))
                           fail("compound Poisson rate must be finite and >= 0");
                       std::visit(overloaded{
                                      [&](const PointJump& d) {
                                          if (!std::isfinite(d.value) || d.value == 0.0)
                                              fail("point jump must be finite and non-zero");
                                      },
                                      [&](const NormalJump& d) {
                                          if (!std::isfinite(d.mean) || !(d.sd > 0.0 && std::isfinite(d.sd)))
                                              fail("normal jump law needs finite mean and sd > 0");
                                      },
                                      [&](const UniformJump& d) {
                                          if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.hi > d.lo))
                                              fail("uniform jump law needs finite lo < hi");
                                      },
                                  },
                                  j.distribution);
                   },
                   [&](const AtomicJumps& j) {
                       for (const Atom& a : j.atoms) {
                           if (!std::isfinite(a.location) || a.location == 0.0)
                               fail("atoms must sit at finite non-zero locations");
                           if (!(a.weight >= 0.0 && std::isfinite(a.weight)))
                               fail("atom weights must be finite and >= 0");
                       }
                   },
               },
               jumps);
}

}  // namespace

void LevyTriplet::validate() const {
    if (!std::isfinite(drift)) throw DomainError("drift must be finite");
    if (!(diffusion >= 0.0 && std::isfinite(diffusion)))
        throw DomainError("diffusion coefficient a must be finite and >= 0");
    validate_jumps(jumps);
    if (!std::isfinite(integrability_mass(jumps)))
        throw InvalidMeasureError("jump measure does not integrate min(1, y^2)");
}

bool LevyTriplet::symmetric_jumps() const {
    return std::visit(overloaded{
                          [](const NoJumps&) { return true; },
                          [](const StableJumps&) { return true; },
                          [](const TemperedStableJumps&) { return true; },
                          [](const CompoundPoissonJumps& j) {
                              return std::visit(overloaded{
                                                    [](const PointJump&) { return false; },
                                                    [](const NormalJump& d) { return d.mean == 0.0; },
                                                    [](const UniformJump& d) { return d.lo == -d.hi; },
                                                },
                                                j.distribution);
                          },
                          [](const AtomicJumps& j) { return j.atoms.empty(); },
                      },
                      jumps);
}

std::string describe(const LevyTriplet& t) {
    std::ostringstream out;
    out << "(b=" << t.drift << ", a=" << t.diffusion << ", nu=";
    std::visit(overloaded{
                   [&](const NoJumps&) { out << "none"; },
                   [&](const StableJumps& j) { out << "stable{alpha=" << j.alpha << ", h=" << j.scale << "}"; },
                   [&](const TemperedStableJumps& j) {
                       out << "tempered{alpha=" << j.alpha << ", lambda=" << j.lambda << ", h=" << j.scale << "}";
                   },
                   [&](const CompoundPoissonJumps& j) { out << "compound_poisson{rate=" << j.rate << "}"; },
                   [&](const AtomicJumps& j) { out << "atoms{" << j.atoms.size() << "}"; },
               },
               t.jumps);
    out << ")";
    return out.str();
}

double stable_normalizer(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw DomainError("stable_normalizer: alpha must lie in (0, 2), got " + std::to_string(alpha));
    // int (1 - cos y)/|y|^(1+alpha) dy = 2 Gamma(1-alpha) cos(pi alpha/2) / alpha, rewritten so that
    // alpha = 1 is a regular point: Gamma(1-a) cos(pi a/2) = Gamma(2-a) (pi/2) sinc(pi (1-a)/2).
    const double half_pi = 0.5 * std::numbers::pi;
    const double integral = 2.0 * std::tgamma(2.0 - alpha) / alpha * half_pi * sinc(half_pi * (1.0 - alpha));
    return 1.0 / integral;
}

cplx jump_exponent(const JumpMeasure& jumps, double xi) {
    return std::visit(
        overloaded{
            [](const NoJumps&) { return cplx(0.0); },
            [&](const StableJumps& j) {
                if (xi == 0.0) return cplx(0.0);
                return cplx(j.scale / stable_normalizer(j.alpha) * std::pow(std::abs(xi), j.alpha), 0.0);
            },
            [&](const TemperedStableJumps& j) {
                return cplx(2.0 * j.scale * tempered_half_exponent(j.alpha, j.lambda, xi), 0.0);
            },
            [&](const CompoundPoissonJumps& j) {
                const double m1 = jump_distribution_band_mean(j.distribution, 0.0);
                const cplx cf = jump_distribution_cf(j.distribution, xi);
                return j.rate * (1.0 - cf + cplx(0.0, xi * m1));
            },
            [&](const AtomicJumps& j) {
                cplx total = 0.0;
                for (const Atom& a : j.atoms) {
                    const double u = xi * a.location;
                    const double s = std::sin(0.5 * u);
                    const double re = 2.0 * s * s;
                    const double im = -std::sin(u) + (std::abs(a.location) <= 1.0 ? u : 0.0);
                    total += a.weight * cplx(re, im);
                }
                return total;
            },
        },
        jumps);
}

cplx eval_levy_khinchine(const LevyTriplet& triplet, double xi) {
    return cplx(0.5 * triplet.diffusion * xi * xi, -triplet.drift * xi) + jump_exponent(triplet.jumps, xi);
}

double growth_constant(const LevyTriplet& t) {
    const double local = 0.5 * std::abs(t.drift) + 0.5 * t.diffusion;
    // |1 - e^{iu} + iu| <= u^2/2 and |1 - e^{iu}| <= 2.
    const double jump = std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [](const StableJumps& j) { return j.scale / stable_normalizer(j.alpha); },
            [](const TemperedStableJumps& j) {
                return j.scale / (2.0 - j.alpha) + 4.0 * j.scale / j.alpha;
            },
            [](const CompoundPoissonJumps& j) { return 2.0 * j.rate; },
            [](const AtomicJumps& j) {
                double c = 0.0;
                for (const Atom& a : j.atoms)
                    c += a.weight * (std::abs(a.location) <= 1.0 ? 0.5 * a.location * a.location : 2.0);
                return c;
            },
        },
        t.jumps);
    return local + jump;
}

double tail_mass(const JumpMeasure& jumps, double eps) {
    if (eps < 0.0) throw DomainError("tail_mass: cutoff must be >= 0");
    return std::visit(overloaded{
                          [](const NoJumps&) { return 0.0; },
                          [&](const StableJumps& j) {
                              if (eps == 0.0) return kInf;
                              return 2.0 * j.scale * std::pow(eps, -j.alpha) / j.alpha;
                          },
                          [&](const TemperedStableJumps& j) {
                              if (eps == 0.0) return kInf;
                              return 2.0 * j.scale * tempered_tail(j.alpha, j.lambda, eps);
                          },
                          [&](const CompoundPoissonJumps& j) {
                              return j.rate * jump_distribution_tail(j.distribution, eps);
                          },
                          [&](const AtomicJumps& j) {
                              double m = 0.0;
                              for (const Atom& a : j.atoms)
                                  if (std::abs(a.location) > eps) m += a.weight;
                              return m;
                          },
                      },
                      jumps);
}

double compensator_drift(const JumpMeasure& jumps, double eps) {
    return std::visit(overloaded{
                          [](const NoJumps&) { return 0.0; },
                          [](const StableJumps&) { return 0.0; },
                          [](const TemperedStableJumps&) { return 0.0; },
                          [&](const CompoundPoissonJumps& j) {
                              return j.rate * jump_distribution_band_mean(j.distribution, eps);
                          },
                          [&](const AtomicJumps& j) {
                              double m = 0.0;
                              for (const Atom& a : j.atoms) {
                                  const double r = std::abs(a.location);
                                  if (r > eps && r <= 1.0) m += a.weight * a.location;
                              }
                              return m;
                          },
                      },
                      jumps);
}

double integrability_mass(const JumpMeasure& jumps) {
    return std::visit(overloaded{
                          [](const NoJumps&) { return 0.0; },
                          [](const StableJumps& j) {
                              return 2.0 * j.scale / (2.0 - j.alpha) + 2.0 * j.scale / j.alpha;
                          },
                          [](const TemperedStableJumps& j) {
                              // Inner part bounded by the untempered one; tail computed.
                              auto inner = [&](double y) {
                                  return 2.0 * j.scale * std::pow(y, 1.0 - j.alpha) * std::exp(-j.lambda * y);
                              };
                              const double in = integrate(inner, 0.0, 1.0, {}, "tempered inner mass");
                              return in + 2.0 * j.scale * tempered_tail(j.alpha, j.lambda, 1.0);
                          },
                          [](const CompoundPoissonJumps& j) {
                              return j.rate * jump_distribution_truncated_second_moment(j.distribution);
                          },
                          [](const AtomicJumps& j) {
                              double m = 0.0;
                              for (const Atom& a : j.atoms) m += a.weight * std::min(1.0, a.location * a.location);
                              return m;
                          },
                      },
                      jumps);
}

LevyTriplet brownian(double variance, double drift) { return LevyTriplet{drift, variance, NoJumps{}}; }

LevyTriplet symmetric_stable(double alpha) {
    return LevyTriplet{0.0, 0.0, StableJumps{alpha, stable_normalizer(alpha)}};
}

LevyTriplet pure_drift(double b) { return LevyTriplet{b, 0.0, NoJumps{}}; }

}  // namespace levytype

#include "levytype/levy_sampler.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include "levytype/errors.hpp"
#include "levytype/stable_sampler.hpp"

namespace levytype {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

LevyIncrementSampler::LevyIncrementSampler(LevyTriplet triplet, SamplerOptions opts)
    : triplet_(std::move(triplet)), opts_(opts) {
    triplet_.validate();
    if (opts_.mode == IncrementMode::ExactStable) {
        const auto* s = std::get_if<StableJumps>(&triplet_.jumps);
        if (!s) throw InvalidMeasureError("exact stable increments need a stable jump measure");
        stable_scale_ = std::pow(s->scale / stable_normalizer(s->alpha), 1.0 / s->alpha);
        return;
    }
    if (!(opts_.epsilon_jump >= 0.0)) throw DomainError("sampler: epsilon_jump must be >= 0");
    eps_ = std::isfinite(tail_mass(triplet_.jumps, 0.0)) ? 0.0 : opts_.epsilon_jump;
    rate_ = tail_mass(triplet_.jumps, eps_);
    if (!std::isfinite(rate_)) {
        std::ostringstream msg;
        msg << "sampler: nu(|y| > " << eps_ << ") is not finite; choose a positive cutoff";
        throw InvalidMeasureError(msg.str());
    }
    compensator_ = compensator_drift(triplet_.jumps, eps_);
}

double LevyIncrementSampler::large_jump(Rng& rng) const {
    const double eps = eps_;
    return std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [&](const StableJumps& s) {
                const double size = eps * std::pow(rng.uniform(), -1.0 / s.alpha);
                return rng.uniform() < 0.5 ? -size : size;
            },
            [&](const TemperedStableJumps& s) {
                // Pareto proposal thinned by exp(-lambda (|y| - eps)).
                for (;;) {
                    const double size = eps * std::pow(rng.uniform(), -1.0 / s.alpha);
                    if (rng.uniform() <= std::exp(-s.lambda * (size - eps))) return rng.uniform() < 0.5 ? -size : size;
                }
            },
            [&](const CompoundPoissonJumps& cp) {
                for (;;) {
                    const double y = std::visit(overloaded{
                                                    [](const PointJump& p) { return p.value; },
                                                    [&](const NormalJump& n) { return n.mean + n.sd * rng.normal(); },
                                                    [&](const UniformJump& u) { return rng.uniform(u.lo, u.hi); },
                                                },
                                                cp.distribution);
                    if (std::abs(y) > eps) return y;
                }
            },
            [&](const AtomicJumps& a) {
                double u = rng.uniform() * rate_;
                double last = 0.0;
                for (const Atom& at : a.atoms) {
                    if (std::abs(at.location) <= eps) continue;
                    last = at.location;
                    u -= at.weight;
                    if (u <= 0.0) return at.location;
                }
                return last;
            },
        },
        triplet_.jumps);
}

IncrementDraw LevyIncrementSampler::draw(double dt, Rng& rng) const {
    IncrementDraw out;
    double x = triplet_.drift * dt;
    if (triplet_.diffusion > 0.0) x += std::sqrt(triplet_.diffusion * dt) * rng.normal();
    if (opts_.mode == IncrementMode::ExactStable) {
        const double alpha = std::get<StableJumps>(triplet_.jumps).alpha;
        x += stable_scale_ * std::pow(dt, 1.0 / alpha) * sample_stable(alpha, rng);
        out.value = x;
        return out;
    }
    if (rate_ > 0.0) {
        out.jumps = rng.poisson(rate_ * dt);
        for (std::uint64_t i = 0; i < out.jumps; ++i) x += large_jump(rng);
    }
    x -= compensator_ * dt;
    out.value = x;
    return out;
}

std::vector<double> simulate_levy_increments(const LevyIncrementSampler& sampler, double dt, std::size_t n_steps,
                                             std::size_t n_paths, std::uint64_t seed) {
    if (!(dt > 0.0)) throw DomainError("increments: dt must be positive");
    std::vector<double> out(n_steps * n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) {
        Rng rng(derive_seed(seed, p, 3));
        for (std::size_t k = 0; k < n_steps; ++k) out[p * n_steps + k] = sampler.sample(dt, rng);
    }
    return out;
}

}  // namespace levytype

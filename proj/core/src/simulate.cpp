#include "levytype/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

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

std::size_t step_count(const SimulationParams& p) {
    if (!(p.dt > 0.0) || !(p.horizon > 0.0)) throw DomainError("simulation: dt and horizon must be positive");
    const double m = std::round(p.horizon / p.dt);
    if (m < 1.0 || std::abs(m * p.dt - p.horizon) > 1e-9 * p.horizon) {
        std::ostringstream msg;
        msg << "simulation: horizon " << p.horizon << " is not a multiple of dt " << p.dt;
        throw DomainError(msg.str());
    }
    return static_cast<std::size_t>(m);
}

// Runs body(path) for every path, splitting the range into contiguous blocks.
template <class Body>
void for_each_path(std::size_t paths, unsigned threads, Body body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(paths, 1))));
    if (workers == 1) {
        for (std::size_t p = 0; p < paths; ++p) body(p);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::size_t first_path = paths;
    std::mutex guard;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = paths * w / workers, hi = paths * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t p = lo; p < hi; ++p) {
                try {
                    body(p);
                } catch (...) {
                    std::lock_guard lock(guard);
                    // Report the lowest failing path so the error matches the serial run.
                    if (p < first_path) {
                        first_path = p;
                        first_error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void check_finite(double x, std::size_t path, std::size_t step) {
    if (!std::isfinite(x)) {
        std::ostringstream msg;
        msg << "simulation: non-finite state on path " << path << " at step " << step;
        throw SimulationError(msg.str(), path);
    }
}

}  // namespace

double sample_initial(const InitialLaw& law, Rng& rng) {
    return std::visit(overloaded{
                          [](const PointMass& p) { return p.x; },
                          [&](const UniformLaw& u) { return rng.uniform(u.lo, u.hi); },
                          [&](const NormalLaw& n) { return n.mean + n.sd * rng.normal(); },
                      },
                      law);
}

PathEnsemble simulate_levy(const LevyIncrementSampler& sampler, const InitialLaw& x0, const SimulationParams& params) {
    const std::size_t m = step_count(params);
    PathEnsemble e(params.dt, m, params.paths, params.seed);
    e.epsilon_jump = sampler.epsilon_jump();
    e.scheme = sampler.mode() == IncrementMode::ExactStable ? "levy-exact-stable" : "levy-truncated";
    for_each_path(params.paths, params.threads, [&](std::size_t p) {
        Rng init(derive_seed(params.seed, p, kStreamInitial));
        Rng rng(derive_seed(params.seed, p, kStreamSingle));
        double x = sample_initial(x0, init);
        e.at(p, 0) = x;
        for (std::size_t k = 0; k < m; ++k) {
            x += sampler.sample(params.dt, rng);
            check_finite(x, p, k + 1);
            e.at(p, k + 1) = x;
        }
    });
    return e;
}

PathEnsemble simulate_glued_sde(const LevyIncrementSampler& left, const LevyIncrementSampler& right,
                                const InitialLaw& x0, const SimulationParams& params, const DriverSeeds& drivers) {
    const std::size_t m = step_count(params);
    PathEnsemble e(params.dt, m, params.paths, params.seed);
    e.epsilon_jump = std::max(left.epsilon_jump(), right.epsilon_jump());
    e.scheme = "glued-euler";
    const std::uint64_t left_root = drivers.left.value_or(params.seed);
    const std::uint64_t right_root = drivers.right.value_or(params.seed);
    for_each_path(params.paths, params.threads, [&](std::size_t p) {
        Rng init(derive_seed(params.seed, p, kStreamInitial));
        Rng l(derive_seed(left_root, p, kStreamLeft));
        Rng r(derive_seed(right_root, p, kStreamRight));
        double x = sample_initial(x0, init);
        e.at(p, 0) = x;
        for (std::size_t k = 0; k < m; ++k) {
            const double dl = left.sample(params.dt, l);
            const double dr = right.sample(params.dt, r);
            x += x <= 0.0 ? dl : dr;
            check_finite(x, p, k + 1);
            e.at(p, k + 1) = x;
        }
    });
    return e;
}

PathEnsemble simulate_glued_sde(const LevyTriplet& left, const LevyTriplet& right, const InitialLaw& x0,
                                const SimulationParams& params, const SamplerOptions& opts,
                                const DriverSeeds& drivers) {
    return simulate_glued_sde(LevyIncrementSampler(left, opts), LevyIncrementSampler(right, opts), x0, params,
                              drivers);
}

PathEnsemble simulate_stable_like(const std::function<double(double)>& alpha, const InitialLaw& x0,
                                  const SimulationParams& params) {
    const std::size_t m = step_count(params);
    PathEnsemble e(params.dt, m, params.paths, params.seed);
    e.scheme = "stable-like-euler";
    const double log_dt = std::log(params.dt);
    for_each_path(params.paths, params.threads, [&](std::size_t p) {
        Rng init(derive_seed(params.seed, p, kStreamInitial));
        Rng rng(derive_seed(params.seed, p, kStreamSingle));
        double x = sample_initial(x0, init);
        e.at(p, 0) = x;
        for (std::size_t k = 0; k < m; ++k) {
            const double a = alpha(x);
            if (!(a > 0.0 && a <= 2.0)) {
                std::ostringstream msg;
                msg << "simulation: alpha(" << x << ") = " << a << " outside (0, 2] on path " << p;
                throw SimulationError(msg.str(), p);
            }
            x += std::exp(log_dt / a) * sample_stable(a, rng);
            check_finite(x, p, k + 1);
            e.at(p, k + 1) = x;
        }
    });
    return e;
}

PathEnsemble simulate_stable_like(const StabilityIndex& alpha, const InitialLaw& x0, const SimulationParams& params) {
    return simulate_stable_like([&alpha](double x) { return alpha(x); }, x0, params);
}

}  // namespace levytype

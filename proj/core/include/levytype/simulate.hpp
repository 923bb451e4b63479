#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>

#include "levytype/levy_sampler.hpp"
#include "levytype/levy_triplet.hpp"
#include "levytype/path_ensemble.hpp"
#include "levytype/rng.hpp"
#include "levytype/stability_index.hpp"

namespace levytype {

struct PointMass {
    double x = 0.0;
};
struct UniformLaw {
    double lo = 0.0;
    double hi = 1.0;
};
struct NormalLaw {
    double mean = 0.0;
    double sd = 1.0;
};
using InitialLaw = std::variant<PointMass, UniformLaw, NormalLaw>;

double sample_initial(const InitialLaw& law, Rng& rng);

struct SimulationParams {
    double horizon = 1.0;
    double dt = 1e-3;
    std::size_t paths = 1000;
    std::uint64_t seed = 1;
    // Worker threads; results do not depend on it.
    unsigned threads = 1;
};

// Replacement root seeds for the two drivers of the glued equation. Unset
// drivers use the ensemble seed.
struct DriverSeeds {
    std::optional<std::uint64_t> left;
    std::optional<std::uint64_t> right;
};

// X_{k+1} = X_k + L_{t_{k+1}} - L_{t_k}.
PathEnsemble simulate_levy(const LevyIncrementSampler& sampler, const InitialLaw& x0, const SimulationParams& params);

// X_{k+1} = X_k + 1_{X_k <= 0} dL1_k + 1_{X_k > 0} dL2_k, both increments drawn at every step.
PathEnsemble simulate_glued_sde(const LevyIncrementSampler& left, const LevyIncrementSampler& right,
                                const InitialLaw& x0, const SimulationParams& params, const DriverSeeds& drivers = {});
PathEnsemble simulate_glued_sde(const LevyTriplet& left, const LevyTriplet& right, const InitialLaw& x0,
                                const SimulationParams& params, const SamplerOptions& opts = {},
                                const DriverSeeds& drivers = {});

// X_{k+1} = X_k + dt^(1/alpha(X_k)) S, S symmetric alpha(X_k)-stable with CF exp(-|xi|^alpha).
// alpha may take values in (0, 2].
PathEnsemble simulate_stable_like(const std::function<double(double)>& alpha, const InitialLaw& x0,
                                  const SimulationParams& params);
PathEnsemble simulate_stable_like(const StabilityIndex& alpha, const InitialLaw& x0, const SimulationParams& params);

// Substream indices used per path.
inline constexpr std::uint64_t kStreamInitial = 0;
inline constexpr std::uint64_t kStreamLeft = 1;
inline constexpr std::uint64_t kStreamRight = 2;
inline constexpr std::uint64_t kStreamSingle = 3;

}  // namespace levytype

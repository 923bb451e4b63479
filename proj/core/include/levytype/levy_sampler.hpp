#pragma once

#include <cstdint>
#include <vector>

#include "levytype/levy_triplet.hpp"
#include "levytype/rng.hpp"

namespace levytype {

enum class IncrementMode {
    // b dt + sqrt(a dt) Z + jumps with |y| > eps_jump - dt * int_{eps<|y|<=1} y nu(dy).
    Truncated,
    // Exact symmetric stable increments; only for StableJumps.
    ExactStable,
};

struct SamplerOptions {
    double epsilon_jump = 1e-3;
    IncrementMode mode = IncrementMode::Truncated;
};

struct IncrementDraw {
    double value = 0.0;
    std::uint64_t jumps = 0;
};

// Increment sampler for one Levy triplet. Finite jump measures are simulated
// in full (the cutoff is ignored); infinite ones drop jumps below epsilon_jump.
class LevyIncrementSampler {
public:
    explicit LevyIncrementSampler(LevyTriplet triplet, SamplerOptions opts = {});

    IncrementDraw draw(double dt, Rng& rng) const;
    double sample(double dt, Rng& rng) const { return draw(dt, rng).value; }

    const LevyTriplet& triplet() const { return triplet_; }
    IncrementMode mode() const { return opts_.mode; }
    // Cutoff actually used (0 for finite jump measures).
    double epsilon_jump() const { return eps_; }
    // int_{eps < |y| <= 1} y nu(dy).
    double compensator() const { return compensator_; }
    // nu(|y| > eps).
    double large_jump_rate() const { return rate_; }

private:
    double large_jump(Rng& rng) const;

    LevyTriplet triplet_;
    SamplerOptions opts_;
    double eps_ = 0.0;
    double compensator_ = 0.0;
    double rate_ = 0.0;
    double stable_scale_ = 0.0;  // (s / h*)^(1/alpha) in exact mode
};

// Row-major n_paths x n_steps increments; path p uses substream (seed, p).
std::vector<double> simulate_levy_increments(const LevyIncrementSampler& sampler, double dt, std::size_t n_steps,
                                             std::size_t n_paths, std::uint64_t seed);

}  // namespace levytype

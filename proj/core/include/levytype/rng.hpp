#pragma once

#include <cstdint>
#include <random>

namespace levytype {

// One step of the splitmix64 generator; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed of substream (stream, substream) under a root seed. Distinct indices
// give statistically independent mt19937_64 streams; adding paths never
// changes the seeds of earlier ones.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t substream = 0);

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next() { return engine_(); }
    // Uniform on the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    double exponential();
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace levytype

#pragma once

#include <cstdint>
#include <vector>

#include "levytype/rng.hpp"

namespace levytype {

// Symmetric alpha-stable variate with characteristic function exp(-|xi|^alpha),
// 0 < alpha <= 2 (Chambers-Mallows-Stuck transform). alpha = 2 gives N(0, 2),
// alpha = 1 the standard Cauchy law.
double sample_stable(double alpha, Rng& rng);

// n i.i.d. draws from the substream (seed, 0). Throws DomainError for alpha outside (0, 2].
std::vector<double> sample_stable(double alpha, std::size_t n, std::uint64_t seed);

}  // namespace levytype

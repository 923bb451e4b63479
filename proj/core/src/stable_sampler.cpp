#include "levytype/stable_sampler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "levytype/errors.hpp"

namespace levytype {

namespace {
void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        std::ostringstream msg;
        msg << "stable sampler: alpha = " << alpha << " outside (0, 2]";
        throw DomainError(msg.str());
    }
}
}  // namespace

double sample_stable(double alpha, Rng& rng) {
    const double v = std::numbers::pi * (rng.uniform() - 0.5);
    if (alpha == 1.0) return std::tan(v);
    const double w = rng.exponential();
    const double cv = std::cos(v);
    return std::sin(alpha * v) / std::pow(cv, 1.0 / alpha) *
           std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_stable(double alpha, std::size_t n, std::uint64_t seed) {
    check_alpha(alpha);
    Rng rng(derive_seed(seed, 0));
    std::vector<double> out(n);
    for (auto& v : out) v = sample_stable(alpha, rng);
    return out;
}

}  // namespace levytype

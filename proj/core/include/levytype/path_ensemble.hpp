#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace levytype {

// N paths on the uniform grid t_k = k dt, k = 0..M, stored row-major
// (path-major). Between grid points a path is taken to be constant.
struct PathEnsemble {
    double dt = 0.0;
    std::size_t steps = 0;  // M
    std::size_t paths = 0;  // N
    std::uint64_t seed = 0;
    double epsilon_jump = 0.0;
    std::string scheme;
    std::vector<double> states;  // N * (M + 1)

    PathEnsemble() = default;
    PathEnsemble(double dt, std::size_t steps, std::size_t paths, std::uint64_t seed);

    double time(std::size_t k) const { return static_cast<double>(k) * dt; }
    double horizon() const { return time(steps); }
    double& at(std::size_t path, std::size_t k) { return states[path * (steps + 1) + k]; }
    double at(std::size_t path, std::size_t k) const { return states[path * (steps + 1) + k]; }
    std::span<const double> path(std::size_t i) const {
        return {states.data() + i * (steps + 1), steps + 1};
    }
    double initial(std::size_t path) const { return at(path, 0); }
    // Grid index of time t; throws InputError unless t is a grid time.
    std::size_t step_of(double t) const;
    // True (and sets *x) when all paths start at the same point.
    bool point_started(double* x = nullptr) const;
};

// Binary dump: "LVTPATHS", u32 version (1), u64 M, u64 N, f64 dt, u64 seed,
// then the N (M + 1) states as f64, all little-endian.
void write_binary(const PathEnsemble& ensemble, std::ostream& os);
PathEnsemble read_binary(std::istream& is);

// Long format "path_id,t,x"; every path_stride-th path and step_stride-th step
// (the last step is always included).
void write_csv(const PathEnsemble& ensemble, std::ostream& os, std::size_t path_stride = 1,
               std::size_t step_stride = 1);

}  // namespace levytype

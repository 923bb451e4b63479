#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levytype/generator.hpp"
#include "levytype/path_ensemble.hpp"
#include "levytype/test_function.hpp"

namespace levytype {

// x -> Af(x) tabulated on [lo, hi] and interpolated with 4-point Lagrange
// stencils in a coordinate u that is uniform (spacing s) on a core interval
// around supp f and sinh-stretched beyond it; s is chosen so that [lo, hi]
// maps onto about `points` unit cells. Segments are split at the generator's
// breakpoints; a breakpoint belongs to the segment on its left. Outside
// [lo, hi] Af is evaluated directly.
class GeneratorCache {
public:
    GeneratorCache(const GeneratorSpec& spec, const TestFn& f, double lo, double hi, int points,
                   const GeneratorOptions& opts = {});

    double operator()(double x) const;
    // Max |interpolated - exact| over all cell midpoints.
    double midpoint_error() const;
    int points() const { return points_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    struct Segment {
        double x_lo, x_hi;  // (x_lo, x_hi], the first segment is closed on the left
        double u_lo, du;
        std::vector<double> values;
    };
    double to_u(double x) const;
    double to_x(double u) const;
    double interpolate(const Segment& s, double x) const;
    const Segment& segment_of(double x) const;

    GeneratorSpec spec_;
    TestFn f_;
    GeneratorOptions opts_;
    double lo_, hi_, centre_, core_, scale_;
    int points_;
    std::vector<Segment> segments_;
};

struct WeightFn {
    std::string id;
    std::function<double(double)> h;
};

struct MartingaleOptions {
    double z_max = 3.0;
    int cache_points = 2048;
    double cache_budget = 1e-6;
    int max_refinements = 3;
    unsigned threads = 1;
    GeneratorOptions generator;
};

struct MartingaleTestReport {
    std::string f_id;
    std::vector<std::string> h_ids;
    std::vector<double> weight_times;  // t_1..t_j
    double t_start = 0.0;              // t_j
    double t_end = 0.0;                // t_{j+1}
    double defect = 0.0;
    double stderr_ = 0.0;
    double z = 0.0;
    std::size_t paths = 0;
    double z_max = 3.0;
    bool pass = false;
    int cache_points = 0;
    double cache_error = 0.0;
    std::string generator;
};

// Monte-Carlo estimate of
//   E[(f(X_{t_end}) - f(X_{t_start}) - int_{t_start}^{t_end} Af(X_s) ds) prod_k h_k(X_{t_k})]
// with the time integral by the trapezoid rule over every grid state in the
// window. All times must lie on the ensemble grid and weight_times <= t_start.
// Throws NumericError if the Af cache cannot meet the interpolation budget.
MartingaleTestReport martingale_defect(const PathEnsemble& ensemble, const GeneratorSpec& spec, const TestFn& f,
                                       std::span<const WeightFn> weights, std::span<const double> weight_times,
                                       double t_start, double t_end, const MartingaleOptions& opts = {});

// Same functional with a prebuilt cache (lets several weight families share one).
MartingaleTestReport martingale_defect(const PathEnsemble& ensemble, const GeneratorCache& cache, const TestFn& f,
                                       std::span<const WeightFn> weights, std::span<const double> weight_times,
                                       double t_start, double t_end, const MartingaleOptions& opts = {});

// Cache over the ensemble's observed range +-10%, doubling the node count
// until the midpoint error is within budget.
GeneratorCache build_generator_cache(const PathEnsemble& ensemble, const GeneratorSpec& spec, const TestFn& f,
                                     const MartingaleOptions& opts = {});

void write_martingale_text(std::ostream& os, std::span<const MartingaleTestReport> reports);
// Columns f,h,t_start,t_end,defect,stderr,z,paths,pass.
void write_martingale_csv(std::ostream& os, std::span<const MartingaleTestReport> reports);

}  // namespace levytype

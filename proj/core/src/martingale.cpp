#include "levytype/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "levytype/errors.hpp"

namespace levytype {

namespace {
// Beyond the core the node spacing grows geometrically by about 1/kTailCells per cell.
constexpr double kTailCells = 50.0;
}  // namespace

GeneratorCache::GeneratorCache(const GeneratorSpec& spec, const TestFn& f, double lo, double hi, int points,
                               const GeneratorOptions& opts)
    : spec_(spec), f_(f), opts_(opts), lo_(lo), hi_(hi), points_(points) {
    if (!(hi > lo) || points < 16) throw InputError("generator cache: need hi > lo and at least 16 points");
    const Interval supp = f.support();
    centre_ = 0.5 * (supp.lo + supp.hi);
    core_ = 0.5 * supp.length() + f.min_radius();
    // Pick the core spacing so that [lo, hi] spans `points` unit cells in u.
    double s_lo = 1e-9, s_hi = hi - lo;
    for (int it = 0; it < 200; ++it) {
        scale_ = std::sqrt(s_lo * s_hi);
        if (to_u(hi) - to_u(lo) > points) {
            s_lo = scale_;
        } else {
            s_hi = scale_;
        }
    }
    scale_ = s_hi;

    std::vector<double> cuts{lo};
    for (double d : generator_breakpoints(spec))
        if (d > lo && d < hi) cuts.push_back(d);
    cuts.push_back(hi);
    const double u_total = to_u(hi) - to_u(lo);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        Segment seg;
        seg.x_lo = cuts[s];
        seg.x_hi = cuts[s + 1];
        seg.u_lo = to_u(seg.x_lo);
        const double u_hi = to_u(seg.x_hi);
        const int cells = std::max(16, static_cast<int>(std::ceil(points * (u_hi - seg.u_lo) / u_total)));
        seg.du = (u_hi - seg.u_lo) / cells;
        seg.values.resize(cells + 1);
        for (int i = 0; i <= cells; ++i) {
            double x = to_x(seg.u_lo + i * seg.du);
            if (i == 0) x = s == 0 ? seg.x_lo : std::nextafter(seg.x_lo, std::numeric_limits<double>::infinity());
            if (i == cells) x = seg.x_hi;
            seg.values[i] = apply_generator_integral(spec_, f_, x, opts_);
        }
        segments_.push_back(std::move(seg));
    }
}

double GeneratorCache::to_u(double x) const {
    const double d = x - centre_;
    const double a = std::abs(d);
    if (a <= core_) return d / scale_;
    const double stretch = kTailCells * scale_;
    return std::copysign(core_ / scale_ + kTailCells * std::asinh((a - core_) / stretch), d);
}

double GeneratorCache::to_x(double u) const {
    const double a = std::abs(u);
    const double u_core = core_ / scale_;
    if (a <= u_core) return centre_ + scale_ * u;
    const double stretch = kTailCells * scale_;
    return centre_ + std::copysign(core_ + stretch * std::sinh((a - u_core) / kTailCells), u);
}

const GeneratorCache::Segment& GeneratorCache::segment_of(double x) const {
    for (const auto& s : segments_)
        if (x <= s.x_hi) return s;
    return segments_.back();
}

double GeneratorCache::interpolate(const Segment& s, double x) const {
    const int cells = static_cast<int>(s.values.size()) - 1;
    const double p = (to_u(x) - s.u_lo) / s.du;
    const int j = std::clamp(static_cast<int>(std::floor(p)) - 1, 0, cells - 3);
    const double t = p - j;
    // Lagrange weights for nodes j, j+1, j+2, j+3 at offset t.
    const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return w0 * s.values[j] + w1 * s.values[j + 1] + w2 * s.values[j + 2] + w3 * s.values[j + 3];
}

double GeneratorCache::operator()(double x) const {
    if (x < lo_ || x > hi_) return apply_generator_integral(spec_, f_, x, opts_);
    return interpolate(segment_of(x), x);
}

double GeneratorCache::midpoint_error() const {
    double worst = 0.0;
    for (const auto& s : segments_) {
        const int cells = static_cast<int>(s.values.size()) - 1;
        for (int i = 0; i < cells; ++i) {
            const double x = to_x(s.u_lo + (i + 0.5) * s.du);
            if (!(x > s.x_lo && x < s.x_hi)) continue;
            worst = std::max(worst, std::abs(interpolate(s, x) - apply_generator_integral(spec_, f_, x, opts_)));
        }
    }
    return worst;
}

GeneratorCache build_generator_cache(const PathEnsemble& e, const GeneratorSpec& spec, const TestFn& f,
                                     const MartingaleOptions& opts) {
    if (e.states.empty()) throw InputError("martingale: empty ensemble");
    const auto [mn, mx] = std::minmax_element(e.states.begin(), e.states.end());
    const Interval supp = f.support();
    const double lo0 = std::min(*mn, supp.lo), hi0 = std::max(*mx, supp.hi);
    const double pad = 0.1 * (hi0 - lo0);
    int points = opts.cache_points;
    double err = 0.0;
    for (int attempt = 0; attempt <= opts.max_refinements; ++attempt, points *= 2) {
        GeneratorCache cache(spec, f, lo0 - pad, hi0 + pad, points, opts.generator);
        err = cache.midpoint_error();
        if (err <= opts.cache_budget) return cache;
    }
    std::ostringstream msg;
    msg << "martingale: Af interpolation error " << err << " above budget " << opts.cache_budget << " with "
        << points / 2 << " nodes";
    throw NumericError(msg.str());
}

MartingaleTestReport martingale_defect(const PathEnsemble& e, const GeneratorCache& cache, const TestFn& f,
                                       std::span<const WeightFn> weights, std::span<const double> weight_times,
                                       double t_start, double t_end, const MartingaleOptions& opts) {
    if (weights.size() != weight_times.size()) throw InputError("martingale: one time per weight function");
    const std::size_t k1 = e.step_of(t_start), k2 = e.step_of(t_end);
    if (k2 <= k1) throw InputError("martingale: t_end must exceed t_start");
    std::vector<std::size_t> kw;
    for (double t : weight_times) {
        const std::size_t k = e.step_of(t);
        if (k > k1) throw InputError("martingale: weight times must not exceed t_start");
        kw.push_back(k);
    }

    std::vector<double> y(e.paths);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            const auto path = e.path(p);
            double integral = 0.5 * (cache(path[k1]) + cache(path[k2]));
            for (std::size_t k = k1 + 1; k < k2; ++k) integral += cache(path[k]);
            integral *= e.dt;
            double w = 1.0;
            for (std::size_t i = 0; i < weights.size(); ++i) w *= weights[i].h(path[kw[i]]);
            y[p] = (f(path[k2]) - f(path[k1]) - integral) * w;
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(e.paths)));
    if (workers == 1) {
        work(0, e.paths);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, e.paths * w / workers, e.paths * (w + 1) / workers);
        for (auto& t : pool) t.join();
    }

    // Fixed-order reductions so the result does not depend on the thread count.
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(e.paths);
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= static_cast<double>(e.paths > 1 ? e.paths - 1 : 1);

    MartingaleTestReport r;
    r.f_id = f.name();
    for (const auto& w : weights) r.h_ids.push_back(w.id);
    r.weight_times.assign(weight_times.begin(), weight_times.end());
    r.t_start = t_start;
    r.t_end = t_end;
    r.defect = mean;
    r.stderr_ = std::sqrt(var / static_cast<double>(e.paths));
    if (r.stderr_ > 0.0) {
        r.z = mean / r.stderr_;
    } else {
        r.z = mean == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), mean);
    }
    r.paths = e.paths;
    r.z_max = opts.z_max;
    r.pass = std::abs(r.z) <= opts.z_max;
    r.cache_points = cache.points();
    return r;
}

MartingaleTestReport martingale_defect(const PathEnsemble& e, const GeneratorSpec& spec, const TestFn& f,
                                       std::span<const WeightFn> weights, std::span<const double> weight_times,
                                       double t_start, double t_end, const MartingaleOptions& opts) {
    const GeneratorCache cache = build_generator_cache(e, spec, f, opts);
    MartingaleTestReport r = martingale_defect(e, cache, f, weights, weight_times, t_start, t_end, opts);
    r.cache_error = cache.midpoint_error();
    r.generator = describe(spec);
    return r;
}

void write_martingale_text(std::ostream& os, std::span<const MartingaleTestReport> reports) {
    os.precision(8);
    for (const auto& r : reports) {
        os << "MG " << (r.pass ? "PASS" : "FAIL") << " f=" << r.f_id << " h=";
        for (std::size_t i = 0; i < r.h_ids.size(); ++i)
            os << (i ? "*" : "") << r.h_ids[i] << "@" << r.weight_times[i];
        if (r.h_ids.empty()) os << "1";
        os << " window=[" << r.t_start << ", " << r.t_end << "] defect=" << r.defect << " stderr=" << r.stderr_
           << " z=" << r.z << " |z|max=" << r.z_max << " paths=" << r.paths << " cache_nodes=" << r.cache_points;
        if (!r.generator.empty()) os << " generator=" << r.generator;
        os << '\n';
    }
}

void write_martingale_csv(std::ostream& os, std::span<const MartingaleTestReport> reports) {
    os.precision(17);
    os << "f,h,t_start,t_end,defect,stderr,z,paths,pass\n";
    for (const auto& r : reports) {
        std::string h;
        for (std::size_t i = 0; i < r.h_ids.size(); ++i) h += (i ? "*" : "") + r.h_ids[i];
        if (h.empty()) h = "1";
        os << r.f_id << ',' << h << ',' << r.t_start << ',' << r.t_end << ',' << r.defect << ',' << r.stderr_ << ','
           << r.z << ',' << r.paths << ',' << (r.pass ? 1 : 0) << '\n';
    }
}

}  // namespace levytype

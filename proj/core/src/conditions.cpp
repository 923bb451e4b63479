#include "levytype/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "levytype/errors.hpp"

namespace levytype {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "PASS";
        case Verdict::Warn:
            return "WARN";
        case Verdict::Fail:
            return "FAIL";
    }
    return "?";
}

std::vector<double> geometric_shells(double from, double to, int count) {
    if (count < 2 || !(from > 0.0) || !(to > 0.0)) throw InputError("geometric shells: need count >= 2 and positive ends");
    std::vector<double> out(count);
    const double step = std::log(to / from) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = from * std::exp(step * i);
    out.back() = to;
    return out;
}

ConditionGrid default_condition_grid(std::span<const SymbolFn> family, double x_range) {
    ConditionGrid g;
    for (int i = 0; i <= 400; ++i) g.x.push_back(-x_range + 2.0 * x_range * i / 400.0);
    for (const auto& q : family) {
        for (double d : q.x_breakpoints()) {
            g.x.push_back(d);
            g.x.push_back(d - 1e-9);
            g.x.push_back(d + 1e-9);
        }
    }
    std::sort(g.x.begin(), g.x.end());
    g.x.erase(std::unique(g.x.begin(), g.x.end()), g.x.end());
    g.xi.push_back(0.0);
    for (double s : geometric_shells(1e-4, 1e4, 81)) {
        g.xi.push_back(s);
        g.xi.push_back(-s);
    }
    g.small_shells = geometric_shells(1e-1, 1e-8, 15);
    g.large_shells = geometric_shells(1e1, 1e6, 15);
    return g;
}

namespace {

std::string grid_text(const ConditionGrid& g, std::size_t family) {
    std::ostringstream os;
    os << "n=1.." << family << ", " << g.x.size() << " x-points in [" << (g.x.empty() ? 0.0 : g.x.front()) << ", "
       << (g.x.empty() ? 0.0 : g.x.back()) << "], " << g.xi.size() << " xi-points";
    return os.str();
}

bool strictly_monotone(const std::vector<std::pair<double, double>>& s, int window, bool increasing) {
    const int n = static_cast<int>(s.size());
    for (int i = std::max(1, n - window); i < n; ++i) {
        if (increasing ? !(s[i].second > s[i - 1].second) : !(s[i].second < s[i - 1].second)) return false;
    }
    return true;
}

}  // namespace

std::vector<ConditionReport> check_symbol_conditions(std::span<const SymbolFn> family, const ConditionGrid& grid,
                                                     const ConditionThresholds& th) {
    if (family.empty() || grid.x.empty() || grid.xi.empty() || grid.small_shells.empty() || grid.large_shells.empty())
        throw InputError("symbol conditions: empty family or grid");
    const std::string where = grid_text(grid, family.size());
    std::vector<ConditionReport> out;

    {
        double worst = 0.0;
        for (const auto& q : family)
            for (double x : grid.x) worst = std::max(worst, std::abs(q(x, 0.0)));
        out.push_back({"A1", where, worst, th.a1, worst <= th.a1 ? Verdict::Pass : Verdict::Fail,
                       "max |q^n(x, 0)|", {}});
    }
    {
        double worst = 0.0, claimed = 0.0;
        bool positive = true;
        for (const auto& q : family) {
            claimed = std::max(claimed, q.growth_constant());
            for (double x : grid.x) {
                for (double xi : grid.xi) {
                    const cplx v = q(x, xi);
                    worst = std::max(worst, std::abs(v) / (1.0 + xi * xi));
                    if (v.real() < -1e-12) positive = false;
                }
            }
        }
        std::ostringstream d;
        d << "empirical C = max |q^n| / (1 + xi^2); claimed C = " << claimed;
        if (!positive) d << "; Re q < 0 somewhere on the grid";
        out.push_back({"A2", where, worst, claimed,
                       worst <= claimed * (1.0 + 1e-12) && positive ? Verdict::Pass : Verdict::Fail, d.str(), {}});
    }
    {
        ConditionReport r{"A3", where, 0.0, th.a3_final, Verdict::Fail,
                          "sup_n sup_x sup_{|xi| <= shell} |q^n(x, xi)| on shrinking shells", {}};
        for (double s : grid.small_shells) {
            double worst = 0.0;
            for (const auto& q : family)
                for (double x : grid.x)
                    for (double frac : {-1.0, -0.5, 0.5, 1.0}) worst = std::max(worst, std::abs(q(x, frac * s)));
            r.series.emplace_back(s, worst);
        }
        r.value = r.series.back().second;
        r.verdict = strictly_monotone(r.series, th.trend_window, false) && r.value < th.a3_final ? Verdict::Pass
                                                                                                 : Verdict::Fail;
        out.push_back(std::move(r));
    }
    {
        ConditionReport r{"A4", where, 0.0, th.a4_final, Verdict::Fail,
                          "inf_n inf_x Re q^n(x, +-shell) / log(1 + shell) on growing shells", {}};
        for (double s : grid.large_shells) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : family)
                for (double x : grid.x)
                    for (double sign : {-1.0, 1.0}) best = std::min(best, q(x, sign * s).real() / std::log1p(s));
            r.series.emplace_back(s, best);
        }
        r.value = r.series.back().second;
        r.verdict = strictly_monotone(r.series, th.trend_window, true) && r.value > th.a4_final ? Verdict::Pass
                                                                                                 : Verdict::Fail;
        out.push_back(std::move(r));
    }
    return out;
}

ConditionReport hartman_wintner(const SymbolFn& q, double xi_max, int shells, double threshold) {
    if (!q.x_independent()) throw InputError("Hartman-Wintner check needs an x-independent symbol");
    ConditionReport r;
    r.id = "HW";
    r.threshold = threshold;
    std::ostringstream g;
    g << shells << " geometric shells in [1, " << xi_max << "]";
    r.grid = g.str();
    r.detail = "min over +-shell of Re q / log(1 + |xi|)";
    for (double s : geometric_shells(1.0, xi_max, shells)) {
        const double v = std::min(q(0.0, s).real(), q(0.0, -s).real()) / std::log1p(s);
        r.series.emplace_back(s, v);
    }
    r.value = r.series.back().second;
    r.verdict = strictly_monotone(r.series, 5, true) && r.value > threshold ? Verdict::Pass : Verdict::Fail;
    return r;
}

ConditionReport check_b1(const ExceptionalSets& sets) {
    ConditionReport r;
    r.id = "B1";
    std::ostringstream g;
    g << "m=1.." << sets.m_max() << ", " << sets.centers().size() << " centres";
    r.grid = g.str();
    r.threshold = 1.0;
    bool nest = true;
    for (int m = 1; m < sets.m_max(); ++m) {
        const auto outer = sets.intervals(m);
        for (const auto& in : sets.intervals(m + 1)) {
            bool found = false;
            for (const auto& out : outer) found = found || (out.lo < in.lo && in.hi < out.hi);
            nest = nest && found;
        }
    }
    double first = 0.0;
    for (const auto& u : sets.intervals(1)) first += u.hi - u.lo;
    double worst = 0.0;
    bool decay = true;
    for (int m = 1; m <= sets.m_max(); ++m) {
        double lam = 0.0;
        for (const auto& u : sets.intervals(m)) lam += u.hi - u.lo;
        if (first > 0.0) worst = std::max(worst, m * lam / first);
        r.series.emplace_back(m, lam);
        if (m * lam > first * (1.0 + 1e-12)) decay = false;
    }
    r.value = worst;
    r.verdict = nest && decay ? Verdict::Pass : Verdict::Fail;
    std::ostringstream d;
    d << "nesting " << (nest ? "holds" : "violated") << "; max m lambda(U_m) / lambda(U_1) = " << worst;
    r.detail = d.str();
    return r;
}

std::vector<ConditionReport> schedule_reports(const ApproximationSchedule& schedule) {
    std::vector<ConditionReport> out;
    std::ostringstream g;
    g << "n=1.." << schedule.entries.size() << ", verification grid on [-n, n] \\ U_n";
    for (const auto& c : schedule.certificates)
        out.push_back({c.id, g.str(), c.value, c.threshold, c.passed ? Verdict::Pass : Verdict::Fail, c.detail, {}});
    for (auto& r : out) {
        if (r.id != "S3") continue;
        for (const auto& e : schedule.entries) r.series.emplace_back(e.n, e.sup_distance);
    }
    return out;
}

void write_reports_text(std::ostream& os, std::span<const ConditionReport> reports) {
    os.precision(10);
    for (const auto& r : reports)
        os << r.id << ' ' << to_string(r.verdict) << " value=" << r.value << " threshold=" << r.threshold << " | "
           << r.grid << " | " << r.detail << '\n';
}

namespace {
std::string csv_field(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}
}  // namespace

void write_reports_csv(std::ostream& os, std::span<const ConditionReport> reports) {
    os.precision(17);
    os << "id,verdict,value,threshold,grid,detail\n";
    for (const auto& r : reports)
        os << r.id << ',' << to_string(r.verdict) << ',' << r.value << ',' << r.threshold << ',' << csv_field(r.grid)
           << ',' << csv_field(r.detail) << '\n';
}

void write_shell_csv(std::ostream& os, std::span<const ConditionReport> reports) {
    os.precision(17);
    os << "id,shell,value\n";
    for (const auto& r : reports)
        for (const auto& [s, v] : r.series) os << r.id << ',' << s << ',' << v << '\n';
}

}  // namespace levytype

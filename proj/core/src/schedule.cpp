#include "levytype/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "levytype/errors.hpp"

namespace levytype {

bool ApproximationSchedule::certified() const {
    return !certificates.empty() &&
           std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.passed; });
}

std::vector<double> verification_grid(const ExceptionalSets& sets, int n, int points_per_unit) {
    std::vector<double> grid;
    for (const auto& piece : sets.complement_within(n, {-static_cast<double>(n), static_cast<double>(n)})) {
        const int cells = std::max(1, static_cast<int>(std::ceil(piece.length() * points_per_unit)));
        for (int i = 0; i <= cells; ++i) {
            if (i == cells) {
                grid.push_back(piece.hi);
            } else {
                grid.push_back(piece.lo + piece.length() * i / cells);
            }
        }
    }
    return grid;
}

double sup_distance(const MollifiedIndex& alpha_n, const StabilityIndex& alpha, const std::vector<double>& grid) {
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::abs(alpha_n(x) - alpha(x)));
    return worst;
}

ApproximationSchedule select_schedule(const StabilityIndex& alpha, double epsilon, int n_max,
                                      const ScheduleOptions& opts) {
    if (n_max < 1) throw InputError("schedule: n_max must be at least 1");
    if (!(epsilon > 0.0) || !(epsilon < std::min(alpha.inf(), 2.0 - alpha.sup()))) {
        std::ostringstream msg;
        msg << "schedule: epsilon " << epsilon << " must lie in (0, min(inf alpha, 2 - sup alpha)) = (0, "
            << std::min(alpha.inf(), 2.0 - alpha.sup()) << ")";
        throw DomainError(msg.str());
    }

    const auto d = alpha.discontinuities();
    ApproximationSchedule out{alpha, build_exceptional_sets(d, n_max + 1), epsilon, {}, {}};

    double overall_inf = std::numeric_limits<double>::infinity();
    double overall_sup = -std::numeric_limits<double>::infinity();
    double worst_s3_margin = -std::numeric_limits<double>::infinity();
    int worst_s3_n = 0;

    for (int n = 1; n <= n_max; ++n) {
        const ExtendedIndex base(alpha, out.sets, n);
        const auto grid = verification_grid(out.sets, n, opts.points_per_unit);
        const double target = 1.0 / n;
        double achieved = std::numeric_limits<double>::infinity();
        std::shared_ptr<const MollifiedIndex> chosen;
        int k = 1;
        for (; k <= opts.k_cap; k *= 2) {
            auto candidate = std::make_shared<const MollifiedIndex>(base, k);
            achieved = sup_distance(*candidate, alpha, grid);
            if (achieved < target) {
                chosen = std::move(candidate);
                break;
            }
        }
        if (!chosen) {
            std::ostringstream msg;
            msg << "schedule: no k <= " << opts.k_cap << " meets sup |alpha_" << n << " - alpha| < " << target
                << " (achieved " << achieved << ")";
            throw ScheduleError(msg.str(), achieved);
        }

        // Values of alpha_n on [-n-1, n+1] (it is constant beyond) plus the grid.
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        const int cells = 2 * (n + 1) * opts.points_per_unit;
        for (int i = 0; i <= cells; ++i) {
            const double x = -(n + 1.0) + 2.0 * (n + 1.0) * i / cells;
            const double v = (*chosen)(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (double x : grid) {
            const double v = (*chosen)(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        overall_inf = std::min(overall_inf, lo);
        overall_sup = std::max(overall_sup, hi);
        if (achieved - target > worst_s3_margin) {
            worst_s3_margin = achieved - target;
            worst_s3_n = n;
        }
        out.entries.push_back({n, k, achieved, lo, hi, chosen});
    }

    // (S1): nesting and measure decay of the exceptional sets.
    {
        bool ok = nested(out.sets);
        double worst = 0.0;
        const double first = out.sets.measure(1);
        for (int m = 1; m <= out.sets.m_max(); ++m) {
            const double ratio = first > 0.0 ? m * out.sets.measure(m) / first : 0.0;
            worst = std::max(worst, ratio);
            if (m * out.sets.measure(m) > first * (1.0 + 1e-12)) ok = false;
        }
        std::ostringstream detail;
        detail << "closure(U_{m+1}) in U_m for m < " << out.sets.m_max() << "; max m*lambda(U_m)/lambda(U_1) = "
               << worst;
        out.certificates.push_back({"S1", worst, 1.0, ok, detail.str()});
    }
    // (S2): uniform bounds inside (inf alpha - eps, sup alpha + eps) within (0, 2).
    {
        const bool ok = overall_inf >= alpha.inf() - epsilon && overall_sup <= alpha.sup() + epsilon &&
                        overall_inf > 0.0 && overall_sup < 2.0;
        std::ostringstream detail;
        detail << "grid inf " << overall_inf << ", grid sup " << overall_sup << ", allowed ["
               << alpha.inf() - epsilon << ", " << alpha.sup() + epsilon << "]";
        out.certificates.push_back({"S2", overall_sup, alpha.sup() + epsilon, ok, detail.str()});
    }
    // (S3): sup distance below 1/n for every n.
    {
        std::ostringstream detail;
        detail << "worst margin sup - 1/n = " << worst_s3_margin << " at n = " << worst_s3_n;
        out.certificates.push_back({"S3", worst_s3_margin, 0.0, worst_s3_margin < 0.0, detail.str()});
    }
    return out;
}

void write_schedule_csv(std::ostream& os, const ApproximationSchedule& schedule, double lo, double hi, int points) {
    os << "n,x,alpha_n\n";
    os.precision(17);
    for (const auto& e : schedule.entries) {
        for (int i = 0; i < points; ++i) {
            const double x = points > 1 ? lo + (hi - lo) * i / (points - 1) : lo;
            os << e.n << ',' << x << ',' << (*e.alpha_n)(x) << '\n';
        }
    }
}

void write_exceptional_sets_csv(std::ostream& os, const ExceptionalSets& sets) {
    os << "m,j,center,lo,hi,measure\n";
    os.precision(17);
    for (int m = 1; m <= sets.m_max(); ++m) {
        const auto u = sets.intervals(m);
        const double total = sets.measure(m);
        for (std::size_t j = 0; j < u.size(); ++j)
            os << m << ',' << j + 1 << ',' << sets.centers()[j] << ',' << u[j].lo << ',' << u[j].hi << ',' << total
               << '\n';
    }
}

}  // namespace levytype

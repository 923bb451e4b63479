#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "levytype/exceptional_sets.hpp"
#include "levytype/mollifier.hpp"
#include "levytype/stability_index.hpp"

namespace levytype {

struct Certificate {
    std::string id;  // "S1", "S2", "S3"
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

struct ScheduleEntry {
    int n = 0;
    int k = 0;
    double sup_distance = 0.0;  // sup over the verification grid of |alpha_n - alpha|
    double grid_inf = 0.0;
    double grid_sup = 0.0;
    std::shared_ptr<const MollifiedIndex> alpha_n;
};

struct ScheduleOptions {
    int k_cap = 1 << 20;
    int points_per_unit = 512;
};

struct ApproximationSchedule {
    StabilityIndex alpha;
    ExceptionalSets sets;
    double epsilon = 0.0;
    std::vector<ScheduleEntry> entries;  // entries[n - 1]
    std::vector<Certificate> certificates;

    bool certified() const;
};

// Verification grid for [-n, n] \ U_n: at least `points_per_unit` points per
// unit length on every closed piece, both endpoints of each piece included.
std::vector<double> verification_grid(const ExceptionalSets& sets, int n, int points_per_unit);

double sup_distance(const MollifiedIndex& alpha_n, const StabilityIndex& alpha, const std::vector<double>& grid);

// For n = 1..n_max, the smallest power of two k_n with
//   sup_{[-n, n] \ U_n} |alpha^(n),k_n - alpha| < 1/n
// on the verification grid, plus the (S1)-(S3) certificates. Throws
// DomainError if epsilon is not below min(inf alpha, 2 - sup alpha) and
// ScheduleError if no k up to the cap meets 1/n.
ApproximationSchedule select_schedule(const StabilityIndex& alpha, double epsilon, int n_max,
                                      const ScheduleOptions& opts = {});

// Tidy tables: (n, x, alpha_n) on a uniform grid, and (m, j, center, lo, hi, measure).
void write_schedule_csv(std::ostream& os, const ApproximationSchedule& schedule, double lo, double hi, int points);
void write_exceptional_sets_csv(std::ostream& os, const ExceptionalSets& sets);

}  // namespace levytype

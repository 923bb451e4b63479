#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levytype/exceptional_sets.hpp"
#include "levytype/schedule.hpp"
#include "levytype/symbol.hpp"

namespace levytype {

enum class Verdict { Pass, Warn, Fail };
const char* to_string(Verdict v);

struct ConditionReport {
    std::string id;    // A1 | A2 | A3 | A4 | HW | B1 | B2 | S1 | S2 | S3
    std::string grid;  // human-readable grid description
    double value = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::Fail;
    std::string detail;
    // (shell, value) pairs for the trend-based checks.
    std::vector<std::pair<double, double>> series;
};

// Geometric sequence from `from` to `to` (either direction), `count` >= 2 points.
std::vector<double> geometric_shells(double from, double to, int count);

struct ConditionGrid {
    std::vector<double> x;             // state grid
    std::vector<double> xi;            // frequency grid for A1/A2
    std::vector<double> small_shells;  // decreasing |xi| for A3
    std::vector<double> large_shells;  // increasing |xi| for A4
};

// x uniform on [-x_range, x_range] (401 points) plus each symbol breakpoint
// and points just beside it; xi symmetric geometric 1e-4..1e4; shells
// 1e-1..1e-8 and 1e1..1e6 (15 each).
ConditionGrid default_condition_grid(std::span<const SymbolFn> family, double x_range = 5.0);

struct ConditionThresholds {
    double a1 = 1e-14;
    double a3_final = 1e-3;    // final small-shell value must be below this
    double a4_final = 10.0;    // final large-shell ratio must exceed this
    int trend_window = 5;      // strict monotonicity over the last shells
};

// (A1)-(A4) over a finite family q^1..q^n. A2 reports the empirical
// sup |q| / (1 + xi^2) and passes when it does not exceed the largest claimed C.
std::vector<ConditionReport> check_symbol_conditions(std::span<const SymbolFn> family, const ConditionGrid& grid,
                                                     const ConditionThresholds& thresholds = {});

// Re q(xi) / log(1 + |xi|) on `shells` geometric shells in [1, xi_max]; pass iff
// strictly increasing over the last 5 shells and the final value exceeds threshold.
ConditionReport hartman_wintner(const SymbolFn& q, double xi_max = 1e6, int shells = 25, double threshold = 10.0);

// (B1): closure(U_{m+1}) inside U_m and m lambda(U_m) <= lambda(U_1), recomputed from the intervals.
ConditionReport check_b1(const ExceptionalSets& sets);

// (S1)-(S3) certificates of a schedule as reports.
std::vector<ConditionReport> schedule_reports(const ApproximationSchedule& schedule);

// One record per report: "id verdict value threshold | grid | detail".
void write_reports_text(std::ostream& os, std::span<const ConditionReport> reports);
// Columns id,verdict,value,threshold,grid,detail.
void write_reports_csv(std::ostream& os, std::span<const ConditionReport> reports);
// Tidy shell table: id,shell,value.
void write_shell_csv(std::ostream& os, std::span<const ConditionReport> reports);

}  // namespace levytype

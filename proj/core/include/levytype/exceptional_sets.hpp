#pragma once

#include <span>
#include <vector>

#include "levytype/test_function.hpp"

namespace levytype {

struct OpenInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x > lo && x < hi; }
    double length() const { return hi - lo; }
};

// Nested open neighbourhoods U_1 > U_2 > ... of a finite set of centres d_j,
// with radius r_j^m = base_j / m. Intervals are pairwise disjoint for every m.
class ExceptionalSets {
public:
    ExceptionalSets() = default;
    ExceptionalSets(std::vector<double> centers, std::vector<double> base_radii, int m_max);

    int m_max() const { return m_max_; }
    std::span<const double> centers() const { return centers_; }
    double radius(int m, std::size_t j) const;

    std::vector<OpenInterval> intervals(int m) const;
    double measure(int m) const;
    bool contains(int m, double x) const;
    // Closed pieces of window \ U_m, ordered left to right.
    std::vector<Interval> complement_within(int m, Interval window) const;

private:
    void check_m(int m) const;

    std::vector<double> centers_;
    std::vector<double> base_radii_;
    int m_max_ = 0;
};

// Accumulation points of a finite set, computed literally (always empty for
// finite input without duplicates, so the hierarchy stops after level 0).
std::vector<double> derived_set(std::span<const double> points);

// U_m = union_j (d_j - r_j^m, d_j + r_j^m) with
//   r_j^m = 1 / (m 2^(j+2)) * min(1, distance from d_j to the other points of its level),
// j = 1, 2, ... counted left to right. Throws InputError on unsorted or duplicate input.
ExceptionalSets build_exceptional_sets(std::span<const double> breakpoints, int m_max);

// The simpler choice U_m = (-1/m, 1/m) used for a single threshold at 0.
ExceptionalSets threshold_exceptional_sets(int m_max);

// closure(U_{m+1}) within U_m for every m < m_max.
bool nested(const ExceptionalSets& sets);

}  // namespace levytype

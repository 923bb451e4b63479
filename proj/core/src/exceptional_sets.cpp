#include "levytype/exceptional_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levytype/errors.hpp"

namespace levytype {

ExceptionalSets::ExceptionalSets(std::vector<double> centers, std::vector<double> base_radii, int m_max)
    : centers_(std::move(centers)), base_radii_(std::move(base_radii)), m_max_(m_max) {
    if (m_max_ < 1) throw InputError("exceptional sets: m_max must be at least 1");
    if (centers_.size() != base_radii_.size())
        throw InputError("exceptional sets: one radius per centre required");
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        if (!std::isfinite(centers_[j])) throw InputError("exceptional sets: non-finite centre");
        if (!(base_radii_[j] > 0.0) || !std::isfinite(base_radii_[j]))
            throw InputError("exceptional sets: radii must be positive and finite");
        if (j > 0 && !(centers_[j] > centers_[j - 1]))
            throw InputError("exceptional sets: centres must be strictly increasing");
    }
}

void ExceptionalSets::check_m(int m) const {
    if (m < 1 || m > m_max_) {
        std::ostringstream msg;
        msg << "exceptional sets: m = " << m << " outside [1, " << m_max_ << "]";
        throw InputError(msg.str());
    }
}

double ExceptionalSets::radius(int m, std::size_t j) const {
    check_m(m);
    return base_radii_.at(j) / m;
}

std::vector<OpenInterval> ExceptionalSets::intervals(int m) const {
    check_m(m);
    std::vector<OpenInterval> out;
    out.reserve(centers_.size());
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        const double r = base_radii_[j] / m;
        out.push_back({centers_[j] - r, centers_[j] + r});
    }
    return out;
}

double ExceptionalSets::measure(int m) const {
    double total = 0.0;
    for (const auto& u : intervals(m)) total += u.length();
    return total;
}

bool ExceptionalSets::contains(int m, double x) const {
    for (const auto& u : intervals(m))
        if (u.contains(x)) return true;
    return false;
}

std::vector<Interval> ExceptionalSets::complement_within(int m, Interval window) const {
    std::vector<Interval> out;
    double cursor = window.lo;
    for (const auto& u : intervals(m)) {
        if (u.hi <= window.lo) continue;
        if (u.lo >= window.hi) break;
        if (u.lo >= cursor) out.push_back({cursor, u.lo});
        cursor = std::max(cursor, u.hi);
    }
    if (cursor <= window.hi) out.push_back({cursor, window.hi});
    return out;
}

std::vector<double> derived_set(std::span<const double> points) {
    std::vector<double> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) nearest = std::min(nearest, std::abs(points[j] - points[i]));
        if (nearest == 0.0) out.push_back(points[i]);
    }
    return out;
}

ExceptionalSets build_exceptional_sets(std::span<const double> breakpoints, int m_max) {
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i] == breakpoints[i - 1])
            throw InputError("exceptional sets: duplicate breakpoint " + std::to_string(breakpoints[i]));
        if (!(breakpoints[i] > breakpoints[i - 1])) throw InputError("exceptional sets: breakpoints must be sorted");
    }

    // Level i holds the points of D^(i) \ D^(i+1). For a finite set the first
    // derived set is empty, so every point lands in level 0, but the levels are
    // still peeled off one by one.
    std::vector<double> centers, radii;
    std::vector<double> current(breakpoints.begin(), breakpoints.end());
    while (!current.empty()) {
        const std::vector<double> next = derived_set(current);
        std::vector<double> level;
        for (double d : current)
            if (!std::binary_search(next.begin(), next.end(), d)) level.push_back(d);
        for (std::size_t j = 0; j < level.size(); ++j) {
            double gap = std::numeric_limits<double>::infinity();
            if (j > 0) gap = std::min(gap, level[j] - level[j - 1]);
            if (j + 1 < level.size()) gap = std::min(gap, level[j + 1] - level[j]);
            const double scale = std::ldexp(1.0, -static_cast<int>(j + 1) - 2);
            centers.push_back(level[j]);
            radii.push_back(scale * std::min(1.0, gap));
        }
        if (next.size() == current.size()) break;
        current = next;
    }
    // Centres from different levels are merged back into ascending order.
    std::vector<std::size_t> order(centers.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return centers[a] < centers[b]; });
    std::vector<double> c2, r2;
    for (std::size_t i : order) {
        c2.push_back(centers[i]);
        r2.push_back(radii[i]);
    }
    return ExceptionalSets(std::move(c2), std::move(r2), m_max);
}

ExceptionalSets threshold_exceptional_sets(int m_max) { return ExceptionalSets({0.0}, {1.0}, m_max); }

bool nested(const ExceptionalSets& sets) {
    for (int m = 1; m < sets.m_max(); ++m) {
        const auto outer = sets.intervals(m);
        for (const auto& inner : sets.intervals(m + 1)) {
            const bool inside = std::any_of(outer.begin(), outer.end(), [&](const OpenInterval& u) {
                return u.lo < inner.lo && inner.hi < u.hi;
            });
            if (!inside) return false;
        }
    }
    return true;
}

}  // namespace levytype

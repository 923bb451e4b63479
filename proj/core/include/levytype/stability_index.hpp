#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace levytype {

// Affine branch alpha(x) = intercept + slope * x. Unbounded branches must be constant.
struct IndexPiece {
    double intercept = 1.0;
    double slope = 0.0;

    double operator()(double x) const { return intercept + slope * x; }
};

// Piecewise-continuous stability index alpha : R -> (0, 2).
//
// Breakpoints d_1 < ... < d_K split the line into K + 1 pieces; piece i covers
// (d_{i-1}, d_i], so the value at a breakpoint is taken from the left branch.
// This matches the convention I_1 = (-inf, 0] used by the glued generator.
class StabilityIndex {
public:
    StabilityIndex(std::vector<double> breakpoints, std::vector<IndexPiece> pieces);

    static StabilityIndex constant(double alpha);
    // left_value on (-inf, at], right_value on (at, inf).
    static StabilityIndex step(double left_value, double right_value, double at = 0.0);
    // Piecewise constant with values[i] on piece i.
    static StabilityIndex piecewise_constant(std::vector<double> breakpoints, const std::vector<double>& values);

    double operator()(double x) const { return pieces_[piece_index(x)](x); }

    std::size_t piece_index(double x) const;
    std::size_t piece_count() const { return pieces_.size(); }
    const IndexPiece& piece(std::size_t i) const { return pieces_.at(i); }

    std::span<const double> breakpoints() const { return breakpoints_; }
    // Breakpoints where the one-sided limits differ.
    std::vector<double> discontinuities() const;

    double inf() const { return inf_; }
    double sup() const { return sup_; }

private:
    std::vector<double> breakpoints_;
    std::vector<IndexPiece> pieces_;
    double inf_ = 0.0;
    double sup_ = 0.0;
};

}  // namespace levytype

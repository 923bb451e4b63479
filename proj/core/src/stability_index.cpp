#include "levytype/stability_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levytype/errors.hpp"

namespace levytype {

StabilityIndex::StabilityIndex(std::vector<double> breakpoints, std::vector<IndexPiece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breakpoints_.size() + 1)
        throw InputError("stability index needs exactly one more piece than breakpoints");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i])) throw InputError("breakpoints must be finite");
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
            throw InputError("breakpoints must be sorted strictly increasing");
    }
    if (pieces_.front().slope != 0.0 || pieces_.back().slope != 0.0)
        throw DomainError("unbounded pieces of a stability index must be constant");

    inf_ = std::numeric_limits<double>::infinity();
    sup_ = -inf_;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const IndexPiece& p = pieces_[i];
        if (!std::isfinite(p.intercept) || !std::isfinite(p.slope))
            throw DomainError("stability index pieces must be finite");
        const double lo = i == 0 ? 0.0 : breakpoints_[i - 1];
        const double hi = i + 1 == pieces_.size() ? lo : breakpoints_[i];
        const double a = i == 0 ? p(hi) : p(lo);
        const double b = p(hi);
        inf_ = std::min({inf_, a, b});
        sup_ = std::max({sup_, a, b});
    }
    if (!(inf_ > 0.0 && sup_ < 2.0)) {
        std::ostringstream msg;
        msg << "stability index violates 0 < inf alpha <= sup alpha < 2 (S2): inf = " << inf_
            << ", sup = " << sup_;
        throw DomainError(msg.str());
    }
}

StabilityIndex StabilityIndex::constant(double alpha) { return StabilityIndex({}, {IndexPiece{alpha, 0.0}}); }

StabilityIndex StabilityIndex::step(double left_value, double right_value, double at) {
    return StabilityIndex({at}, {IndexPiece{left_value, 0.0}, IndexPiece{right_value, 0.0}});
}

StabilityIndex StabilityIndex::piecewise_constant(std::vector<double> breakpoints, const std::vector<double>& values) {
    std::vector<IndexPiece> pieces;
    pieces.reserve(values.size());
    for (double v : values) pieces.push_back(IndexPiece{v, 0.0});
    return StabilityIndex(std::move(breakpoints), std::move(pieces));
}

std::size_t StabilityIndex::piece_index(double x) const {
    // First breakpoint >= x closes the piece containing x.
    return static_cast<std::size_t>(std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                    breakpoints_.begin());
}

std::vector<double> StabilityIndex::discontinuities() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double d = breakpoints_[i];
        if (pieces_[i](d) != pieces_[i + 1](d)) out.push_back(d);
    }
    return out;
}

}  // namespace levytype

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace levytype {

// Root of the library's exception hierarchy. Every error raised by levytype
// derives from this type so callers can catch at whatever granularity they need.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (alpha not in (0,2), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Jump measure that is not a Levy measure, or a truncation that leaves an
// infinite mass to simulate.
class InvalidMeasureError : public Error {
public:
    using Error::Error;
};

// Quadrature or truncation failed to reach the requested accuracy.
class NumericError : public Error {
public:
    using Error::Error;
};

// Malformed structural input (unsorted breakpoints, empty grids, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// No mollification index met the uniform-approximation target within the cap.
class ScheduleError : public Error {
public:
    ScheduleError(const std::string& what, double achieved_sup)
        : Error(what), achieved_sup_(achieved_sup) {}
    double achieved_sup() const noexcept { return achieved_sup_; }

private:
    double achieved_sup_;
};

class SimulationError : public Error {
public:
    SimulationError(const std::string& what, std::size_t path_index)
        : Error(what), path_index_(path_index) {}
    std::size_t path_index() const noexcept { return path_index_; }

private:
    std::size_t path_index_;
};

}  // namespace levytype

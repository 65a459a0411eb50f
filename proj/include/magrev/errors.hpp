#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magrev {

/// Invalid parameter or malformed input.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pulse design violates gamma*h*t_f >= pi.
class FeasibilityError : public std::runtime_error {
public:
    FeasibilityError(const std::string& what, double min_tf)
        : std::runtime_error(what), min_tf_(min_tf) {}

    /// Shortest admissible pulse duration for the requested amplitude, units t_0.
    double min_tf() const noexcept { return min_tf_; }

private:
    double min_tf_;
};

/// Non-finite state encountered during integration.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Spherical coordinates evaluated too close to a pole.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace magrev

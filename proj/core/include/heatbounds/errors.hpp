#pragma once

#include <stdexcept>
#include <string>

namespace heatbounds {

/// Iterative solver failed to reach its tolerance within the iteration cap.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string what, double residual)
        : std::runtime_error(std::move(what)), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

/// Problem size exceeds a hard capacity limit (e.g. dense spectrum cap).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace heatbounds

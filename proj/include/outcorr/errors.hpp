#pragma once

#include <stdexcept>
#include <string>

namespace outcorr {

// Thrown when an adaptive routine fails to reach the requested tolerance.
// Carries the best estimate obtained so far together with its error bound.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

// Invalid run configuration: unknown key, missing field, out-of-range value.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace outcorr

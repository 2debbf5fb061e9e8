#include "outcorr/correlation.hpp"

#include <limits>
#include <stdexcept>

#include "outcorr/errors.hpp"

namespace outcorr {

CorrelationResult correlation_coefficient(const MomentSet& moments, double epsilon_floor) {
    if (!(epsilon_floor > 0.0))
        throw std::domain_error("correlation_coefficient: epsilon_floor must be > 0");
    const double variance = moments.second - moments.first * moments.first;
    if (variance < -epsilon_floor)
        throw NumericalError(
            "correlation_coefficient: negative variance signals inconsistent moments",
            variance, epsilon_floor);
    if (variance < epsilon_floor)
        return {std::numeric_limits<double>::quiet_NaN(), moments, variance, true};
    const double zeta = (moments.joint - moments.first * moments.first) / variance;
    return {zeta, moments, variance, false};
}

}  // namespace outcorr

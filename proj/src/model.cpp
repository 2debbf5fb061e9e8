#include "outcorr/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace outcorr {

void validate(const SystemParams& params) {
    if (!(params.alpha > 2.0))
        throw std::domain_error("SystemParams: alpha must be > 2");
    if (!(params.snr > 0.0))
        throw std::domain_error("SystemParams: snr must be > 0");
    if (!(params.beta > 0.0))
        throw std::domain_error("SystemParams: beta must be > 0");
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw std::domain_error("SystemParams: p must lie in [0, 1]");
}

double Geometry::area() const {
    return std::numbers::pi * r_out * r_out;
}

void validate(const Geometry& geom) {
    if (!(geom.r0 > 0.0 && geom.r0 < geom.r_out))
        throw std::domain_error("Geometry: require 0 < r0 < r_out");
    if (!(geom.theta >= 0.0 && geom.theta <= std::numbers::pi + 1e-12))
        throw std::domain_error("Geometry: theta must lie in [0, pi]");
}

double attenuation(double r, double alpha, double beta) {
    if (r <= 0.0) return 0.0;
    if (r < 1.0) {
        const double ra = std::pow(r, alpha);
        return ra / (beta + ra);
    }
    // r^a overflows long before r^-a underflows matters; this form is safe for any r
    return 1.0 / (1.0 + beta * std::pow(r, -alpha));
}

double conditional_outage(const SystemParams& params, std::span<const double> distances) {
    validate(params);
    double prod = 1.0;
    for (double r : distances) {
        if (r < 0.0) throw std::domain_error("conditional_outage: negative distance");
        prod *= 1.0 - params.p + params.p * attenuation(r, params.alpha, params.beta);
    }
    return 1.0 - std::exp(-params.beta / params.snr) * prod;
}

double conditional_outage_realized(const SystemParams& params,
                                   std::span<const double> distances,
                                   std::span<const std::uint8_t> active) {
    validate(params);
    if (distances.size() != active.size())
        throw std::domain_error("conditional_outage_realized: distances/active size mismatch");
    double prod = 1.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (distances[i] < 0.0)
            throw std::domain_error("conditional_outage_realized: negative distance");
        if (active[i]) prod *= attenuation(distances[i], params.alpha, params.beta);
    }
    return 1.0 - std::exp(-params.beta / params.snr) * prod;
}

}  // namespace outcorr

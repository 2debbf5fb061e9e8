#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace outcorr {

// Radio-level constants in linear units. dB-to-linear conversion happens at the
// CLI boundary only; nothing in the core ever sees a dB value.
struct SystemParams {
    double alpha;  // path-loss exponent, > 2
    double snr;    // linear SNR at the receiver, > 0
    double beta;   // linear SINR threshold, > 0
    double p;      // random-access probability in [0, 1]
};

void validate(const SystemParams& params);

// Circular network layout. The reference transmitter sits at the center, both
// receivers on the radius-r0 circle; distances are normalized by r0 throughout.
struct Geometry {
    double r_out;        // network radius
    double r0;           // transmitter-receiver distance, 0 < r0 < r_out
    double theta = 0.0;  // receiver angular separation, radians in [0, pi]

    double tau1() const { return (r_out - r0) / r0; }
    double tau2() const { return (r_out + r0) / r0; }
    double area() const;
};

void validate(const Geometry& geom);

// One sampled interferer configuration: paired normalized distances to the two
// receivers. `active` is populated only by the fading-realized estimator.
struct Topology {
    std::vector<double> r1;
    std::vector<double> r2;
    std::vector<std::uint8_t> active;
};

// r^alpha / (beta + r^alpha), evaluated without overflow for any r >= 0.
double attenuation(double r, double alpha, double beta);

// Outage probability conditioned on the topology but averaged over Rayleigh
// fading and Bernoulli access:
//   1 - exp(-beta/SNR) * prod_i (1 - p + p r_i^a / (beta + r_i^a)).
double conditional_outage(const SystemParams& params, std::span<const double> distances);

// Variant conditioned additionally on the access indicators: the product runs
// over active interferers only and each factor is r^a / (beta + r^a).
double conditional_outage_realized(const SystemParams& params,
                                   std::span<const double> distances,
                                   std::span<const std::uint8_t> active);

}  // namespace outcorr

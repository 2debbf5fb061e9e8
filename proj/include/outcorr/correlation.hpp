#pragma once

namespace outcorr {

// Spatially averaged first, second and joint-first moments of the outage
// probability. All three lie in [0, 1]; second >= first^2 always.
struct MomentSet {
    double first;
    double second;
    double joint;
};

struct CorrelationResult {
    double zeta;      // NaN when degenerate
    MomentSet moments;
    double variance;  // second - first^2
    bool degenerate;  // variance below the floor (p = 0, M = 0, lambda = 0 collapse)
};

// zeta = (joint - first^2) / (second - first^2). A variance below epsilon_floor is
// the deterministic-outage collapse and is flagged rather than divided through; a
// variance below -epsilon_floor signals an upstream numerical fault and throws.
CorrelationResult correlation_coefficient(const MomentSet& moments,
                                          double epsilon_floor = 1e-12);

}  // namespace outcorr

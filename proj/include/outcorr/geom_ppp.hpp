#pragma once

#include "outcorr/correlation.hpp"
#include "outcorr/model.hpp"
#include "outcorr/specfun.hpp"

namespace outcorr {

// Homogeneous Poisson interferer field of intensity lambda per unit area; the
// count inside the disk is Poisson with mean lambda * area.
struct PppModel {
    double lambda;
};

// E[G^M] for M ~ Poisson(mean_count) and a per-interferer factor G in [0, 1]:
//   exp(-mean_count * (1 - G)).
// Every Poisson marginalization in this module routes through this identity.
double poisson_marginalize(double per_interferer_factor, double mean_count);

// Poisson-marginalized moments: the BPP conditional factors T, S, W(theta)
// enter through the identity above with mean lambda * area.
MomentSet ppp_moments(const PppModel& model, const Geometry& geom,
                      const SystemParams& params, double theta,
                      const QuadSpec& spec = {});

}  // namespace outcorr

#pragma once

#include "outcorr/correlation.hpp"
#include "outcorr/model.hpp"
#include "outcorr/specfun.hpp"

namespace outcorr {

// Fixed number of interferers, independently and uniformly placed in the disk.
struct BppModel {
    int m;
};

// PDF of the normalized distance between a uniform point in the disk and a
// receiver on the radius-r0 circle. Supported on [0, tau2], linear up to tau1,
// arccos-weighted on the outer annulus, non-smooth at tau1.
double distance_pdf(const Geometry& geom, double r);

// Psi(x) = int_0^x r^(a+1) / (1 + r^a / beta) dr, via the 2F1 closed form.
double psi(double x, double alpha, double beta);

// Annulus integral of r^(i*a+1) / (beta + r^a)^i weighted by the arccos factor,
// over [tau1, tau2]; order i in {1, 2}.
double z_i(int i, const Geometry& geom, const SystemParams& params,
           const QuadSpec& spec = {});

// E[r^a / (beta + r^a)] under distance_pdf; lies in (0, 1).
double t_func(const Geometry& geom, const SystemParams& params,
              const QuadSpec& spec = {});

// G(x) = int_0^x r^(2a+1) / (beta + r^a)^2 dr, via the 2F1 closed form.
double g_func(double x, const SystemParams& params);

// E[(r^a / (beta + r^a))^2] under distance_pdf: the p-independent quadratic part
// of s_func, equal to X(0).
double squared_attenuation_moment(const Geometry& geom, const SystemParams& params,
                                  const QuadSpec& spec = {});

// E[(1 - p + p r^a / (beta + r^a))^2] under distance_pdf; in [(1-p)^2, 1].
double s_func(const Geometry& geom, const SystemParams& params,
              const QuadSpec& spec = {});

// Normalized distance between the disk point parametrized by (rho, phi) and the
// receiver at angle theta: sqrt(r0^2 + r_out^2 rho + 2 r0 r_out sqrt(rho) cos(phi-theta)) / r0.
double polar_distance(const Geometry& geom, double rho, double phi, double theta);

// Paired-attenuation moment X(theta) over the uniform disk; in (0, 1), X(0)
// equals squared_attenuation_moment.
double x_func(const Geometry& geom, const SystemParams& params, double theta,
              const QuadSpec& spec = {});

// Joint per-interferer factor W(theta); W(0) = S.
double w_func(const Geometry& geom, const SystemParams& params, double theta,
              const QuadSpec& spec = {});

// Spatially averaged moments for M uniform interferers:
//   first  = 1 - e^(-beta/SNR) [1 - p + p T]^M
//   second = 2 first - 1 + e^(-2 beta/SNR) S^M
//   joint  = 2 first - 1 + e^(-2 beta/SNR) W(theta)^M
MomentSet bpp_moments(const BppModel& model, const Geometry& geom,
                      const SystemParams& params, double theta,
                      const QuadSpec& spec = {});

}  // namespace outcorr

#pragma once

#include "outcorr/correlation.hpp"
#include "outcorr/model.hpp"
#include "outcorr/specfun.hpp"

namespace outcorr {

// One Thomas cluster: Poisson(lambda_prime) offspring scattered with a symmetric
// 2-D Gaussian of spread sigma about the cluster center. nu is the distance from
// the evaluation point to the cluster center in the marginal-PDF path; the
// closed-form moments support only the transmitter-centered cluster (nu = 0).
struct TcpModel {
    double lambda_prime;
    double sigma;
    double nu = 0.0;
};

void validate(const TcpModel& model);

// Rician-type distance density (r/sigma^2) exp(-(r^2+nu^2)/(2 sigma^2)) I0(r nu/sigma^2);
// reduces to the Rayleigh density at nu = 0. Evaluated with the scaled Bessel
// factor so it stays finite for nu >> sigma.
double tcp_distance_pdf(const TcpModel& model, double r);

// V = int_0^inf r^a/(beta + r^a) f_r(r|nu) dr by semi-infinite quadrature; in (0, 1).
double v_func(const TcpModel& model, const SystemParams& params,
              const QuadSpec& spec = {});

// C = int_0^inf (r^a/(beta + r^a))^2 f_r(r|nu) dr; satisfies C <= V.
double c_func(const TcpModel& model, const SystemParams& params,
              const QuadSpec& spec = {});

// Truncated Taylor-series route for V at nu = 0, evaluated at a finite upper
// limit x_upper. Diagnostic only: the term-by-term form diverges at an infinite
// upper limit, so this is never the primary evaluation path.
double v_func_series(const TcpModel& model, const SystemParams& params,
                     double x_upper, int n_terms);

// Parameters of the normalized receiver-to-offspring distance distribution for a
// transmitter-centered cluster: Rician with unit offset and spread sigma / r0.
// These are the parameters at which V and C enter the moment formulas.
TcpModel effective_normalized_model(const TcpModel& model, const Geometry& geom);

// Normalized distance between the offspring point parametrized by (rho, phi) and
// the receiver at angle theta, with the inverse-CDF Rayleigh radius
// sqrt(-2 sigma^2 ln rho). rho must lie in (0, 1].
double tcp_polar_distance(const TcpModel& model, const Geometry& geom, double rho,
                          double phi, double theta);

// Paired-attenuation moment X(theta) over the cluster scatter; X(0) equals
// c_func at the effective normalized parameters.
double tcp_x_func(const TcpModel& model, const Geometry& geom,
                  const SystemParams& params, double theta,
                  const QuadSpec& spec = {});

// Intra-cluster moments (cluster centered at the transmitter, nu = 0):
//   first  = 1 - e^(-beta/SNR) exp(-lambda' p (1 - V))
//   second = 2 first - 1 + e^(-2 beta/SNR) exp(-lambda' (1 - Q))
//   joint  = 2 first - 1 + e^(-2 beta/SNR) exp(-lambda' (1 - D(theta)))
// with Q = (1-p)^2 + 2(1-p)p V + p^2 C and D = (1-p)^2 + 2(1-p)p V + p^2 X(theta).
MomentSet tcp_moments(const TcpModel& model, const Geometry& geom,
                      const SystemParams& params, double theta,
                      const QuadSpec& spec = {});

}  // namespace outcorr

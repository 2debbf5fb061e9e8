#pragma once

#include <functional>

namespace outcorr {

// Tolerances and budget for the adaptive quadrature routines.
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

// Gauss hypergeometric 2F1([a1, a2]; b; z) for real parameters.
// Domain: z <= 0 (any magnitude) or z in (0, 1). For z < -0.5 the series is summed
// after a Pfaff transformation to argument z/(z-1); for very negative z the 1/z
// connection formula is used instead, since the Pfaff series needs O(|z|) terms.
double gauss_2f1(double a1, double a2, double b, double z);

// Modified Bessel function of the first kind, order zero. Power series for small
// arguments, asymptotic expansion beyond; finite for x up to ~709.
double bessel_i0(double x);

// exp(-x) * I0(x). Never overflows; use this inside Rician-type densities.
double bessel_i0_scaled(double x);

// Adaptive Gauss-Kronrod (7-15) integration of f over [lo, hi].
// hi may be +infinity; the tail is then mapped onto [0, 1) via r = lo + t/(1-t).
double integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                    const QuadSpec& spec = {});

// (1/2pi) * int_0^1 int_0^{2pi} f(rho, phi) dphi drho, nested adaptive quadrature
// (outer rho, inner phi). The inner pass runs at a tenth of the outer tolerance.
double integrate_2d_polar(const std::function<double(double, double)>& f,
                          const QuadSpec& spec = {});

}  // namespace outcorr

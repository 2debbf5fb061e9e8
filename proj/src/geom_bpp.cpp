#include "outcorr/geom_bpp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace outcorr {
namespace {

double arccos_weight(const Geometry& geom, double r) {
    const double y2 = geom.r0 * geom.r0;
    const double arg = (y2 * r * r + y2 - geom.r_out * geom.r_out) / (2.0 * y2 * r);
    return std::acos(std::clamp(arg, -1.0, 1.0));
}

}  // namespace

double distance_pdf(const Geometry& geom, double r) {
    if (r < 0.0) throw std::domain_error("distance_pdf: r must be >= 0");
    const double scale = 2.0 * r * geom.r0 * geom.r0 / geom.area();
    if (r <= geom.tau1()) return std::numbers::pi * scale;
    if (r >= geom.tau2()) return 0.0;
    return scale * arccos_weight(geom, r);
}

double psi(double x, double alpha, double beta) {
    if (x < 0.0) throw std::domain_error("psi: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double z = -std::pow(x, alpha) / beta;
    return std::pow(x, alpha + 2.0) / (2.0 + alpha) *
           gauss_2f1(1.0, 2.0 / alpha + 1.0, 2.0 / alpha + 2.0, z);
}

double z_i(int i, const Geometry& geom, const SystemParams& params, const QuadSpec& spec) {
    if (i != 1 && i != 2) throw std::domain_error("z_i: order must be 1 or 2");
    validate(geom);
    validate(params);
    const auto integrand = [&geom, &params, i](double r) {
        const double att = attenuation(r, params.alpha, params.beta);
        return r * (i == 1 ? att : att * att) * arccos_weight(geom, r);
    };
    return integrate_1d(integrand, geom.tau1(), geom.tau2(), spec);
}

double t_func(const Geometry& geom, const SystemParams& params, const QuadSpec& spec) {
    validate(geom);
    validate(params);
    const double scale = 2.0 * geom.r0 * geom.r0 / geom.area();
    return scale * (std::numbers::pi / params.beta) *
               psi(geom.tau1(), params.alpha, params.beta) +
           scale * z_i(1, geom, params, spec);
}

double g_func(double x, const SystemParams& params) {
    if (x < 0.0) throw std::domain_error("g_func: x must be >= 0");
    validate(params);
    if (x == 0.0) return 0.0;
    const double a = params.alpha;
    const double z = -std::pow(x, a) / params.beta;
    return std::pow(x, 2.0 * a + 2.0) / ((2.0 + 2.0 * a) * params.beta * params.beta) *
           gauss_2f1(2.0, (2.0 + 2.0 * a) / a, (2.0 + 3.0 * a) / a, z);
}

double squared_attenuation_moment(const Geometry& geom, const SystemParams& params,
                                  const QuadSpec& spec) {
    const double scale = 2.0 * geom.r0 * geom.r0 / geom.area();
    return scale * (std::numbers::pi * g_func(geom.tau1(), params) +
                    z_i(2, geom, params, spec));
}

double s_func(const Geometry& geom, const SystemParams& params, const QuadSpec& spec) {
    const double p = params.p;
    return (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * t_func(geom, params, spec) +
           p * p * squared_attenuation_moment(geom, params, spec);
}

double polar_distance(const Geometry& geom, double rho, double phi, double theta) {
    const double d2 = geom.r0 * geom.r0 + geom.r_out * geom.r_out * rho +
                      2.0 * geom.r0 * geom.r_out * std::sqrt(rho) * std::cos(phi - theta);
    return std::sqrt(std::max(0.0, d2)) / geom.r0;
}

double x_func(const Geometry& geom, const SystemParams& params, double theta,
              const QuadSpec& spec) {
    validate(geom);
    validate(params);
    const auto f = [&geom, &params, theta](double rho, double phi) {
        const double d0 = polar_distance(geom, rho, phi, 0.0);
        const double dt = polar_distance(geom, rho, phi, theta);
        return attenuation(d0, params.alpha, params.beta) *
               attenuation(dt, params.alpha, params.beta);
    };
    return integrate_2d_polar(f, spec);
}

double w_func(const Geometry& geom, const SystemParams& params, double theta,
              const QuadSpec& spec) {
    const double p = params.p;
    return (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * t_func(geom, params, spec) +
           p * p * x_func(geom, params, theta, spec);
}

MomentSet bpp_moments(const BppModel& model, const Geometry& geom,
                      const SystemParams& params, double theta, const QuadSpec& spec) {
    if (model.m < 0) throw std::domain_error("bpp_moments: m must be >= 0");
    validate(geom);
    validate(params);
    const double p = params.p;
    const double t = t_func(geom, params, spec);
    const double sq = squared_attenuation_moment(geom, params, spec);
    const double x = x_func(geom, params, theta, spec);
    const double s = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * t + p * p * sq;
    const double w = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * t + p * p * x;
    const double e1 = std::exp(-params.beta / params.snr);
    const double first = 1.0 - e1 * std::pow(1.0 - p + p * t, model.m);
    const double second = 2.0 * first - 1.0 + e1 * e1 * std::pow(s, model.m);
    const double joint = 2.0 * first - 1.0 + e1 * e1 * std::pow(w, model.m);
    return {first, second, joint};
}

}  // namespace outcorr

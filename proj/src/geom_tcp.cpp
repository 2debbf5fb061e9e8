#include "outcorr/geom_tcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "outcorr/geom_ppp.hpp"

namespace outcorr {

void validate(const TcpModel& model) {
    if (!(model.lambda_prime >= 0.0))
        throw std::domain_error("TcpModel: lambda_prime must be >= 0");
    if (!(model.sigma > 0.0))
        throw std::domain_error("TcpModel: sigma must be > 0");
    if (!(model.nu >= 0.0))
        throw std::domain_error("TcpModel: nu must be >= 0");
}

double tcp_distance_pdf(const TcpModel& model, double r) {
    if (r < 0.0) throw std::domain_error("tcp_distance_pdf: r must be >= 0");
    validate(model);
    const double s2 = model.sigma * model.sigma;
    const double d = r - model.nu;
    // exp(-(r^2+nu^2)/2s^2) I0(r nu/s^2) = exp(-(r-nu)^2/2s^2) [e^-x I0(x)]:
    // the factored form stays finite even when nu >> sigma.
    return r / s2 * std::exp(-0.5 * d * d / s2) * bessel_i0_scaled(r * model.nu / s2);
}

double v_func(const TcpModel& model, const SystemParams& params, const QuadSpec& spec) {
    validate(model);
    validate(params);
    const auto integrand = [&model, &params](double r) {
        return attenuation(r, params.alpha, params.beta) * tcp_distance_pdf(model, r);
    };
    return integrate_1d(integrand, 0.0, std::numeric_limits<double>::infinity(), spec);
}

double c_func(const TcpModel& model, const SystemParams& params, const QuadSpec& spec) {
    validate(model);
    validate(params);
    const auto integrand = [&model, &params](double r) {
        const double att = attenuation(r, params.alpha, params.beta);
        return att * att * tcp_distance_pdf(model, r);
    };
    return integrate_1d(integrand, 0.0, std::numeric_limits<double>::infinity(), spec);
}

double v_func_series(const TcpModel& model, const SystemParams& params, double x_upper,
                     int n_terms) {
    validate(model);
    validate(params);
    if (model.nu != 0.0)
        throw std::domain_error("v_func_series: defined for nu = 0 only");
    if (!(x_upper > 0.0) || n_terms < 1)
        throw std::domain_error("v_func_series: require x_upper > 0 and n_terms >= 1");
    const double alpha = params.alpha;
    const double beta = params.beta;
    const double s2 = model.sigma * model.sigma;
    const double z = -std::pow(x_upper, alpha) / beta;
    // term i carries (-1)^i / (i! 2^i sigma^(2+2i)); built iteratively
    double coeff = 1.0 / s2;
    double sum = 0.0;
    for (int i = 0; i < n_terms; ++i) {
        const double e = 2.0 + 2.0 * i;
        const double f21 = gauss_2f1(1.0, e / alpha + 1.0, e / alpha + 2.0, z);
        sum += coeff / beta * std::pow(x_upper, alpha + e) / (alpha + e) * f21;
        coeff *= -1.0 / (2.0 * s2 * (i + 1.0));
    }
    return sum;
}

TcpModel effective_normalized_model(const TcpModel& model, const Geometry& geom) {
    validate(model);
    validate(geom);
    return {model.lambda_prime, model.sigma / geom.r0, 1.0};
}

double tcp_polar_distance(const TcpModel& model, const Geometry& geom, double rho,
                          double phi, double theta) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::domain_error("tcp_polar_distance: rho must lie in (0, 1]");
    const double radius = std::sqrt(-2.0 * model.sigma * model.sigma * std::log(rho));
    const double d2 = geom.r0 * geom.r0 + radius * radius +
                      2.0 * geom.r0 * radius * std::cos(phi - theta);
    return std::sqrt(std::max(0.0, d2)) / geom.r0;
}

double tcp_x_func(const TcpModel& model, const Geometry& geom, const SystemParams& params,
                  double theta, const QuadSpec& spec) {
    validate(model);
    validate(geom);
    validate(params);
    const auto f = [&](double rho, double phi) {
        const double d0 = tcp_polar_distance(model, geom, rho, phi, 0.0);
        const double dt = tcp_polar_distance(model, geom, rho, phi, theta);
        return attenuation(d0, params.alpha, params.beta) *
               attenuation(dt, params.alpha, params.beta);
    };
    return integrate_2d_polar(f, spec);
}

MomentSet tcp_moments(const TcpModel& model, const Geometry& geom,
                      const SystemParams& params, double theta, const QuadSpec& spec) {
    validate(model);
    validate(geom);
    validate(params);
    if (model.nu != 0.0)
        throw std::domain_error(
            "tcp_moments: moments are derived for the transmitter-centered cluster (nu = 0)");
    // V and C are taken at the normalized Rician parameters induced by the
    // geometry, so that X(0) = C holds and the marginals match the sampled
    // receiver distances.
    const TcpModel norm = effective_normalized_model(model, geom);
    const double v = v_func(norm, params, spec);
    const double c = c_func(norm, params, spec);
    const double x = tcp_x_func(model, geom, params, theta, spec);
    const double p = params.p;
    const double q = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * v + p * p * c;
    const double d = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * v + p * p * x;
    const double e1 = std::exp(-params.beta / params.snr);
    const double lp = model.lambda_prime;
    const double first = 1.0 - e1 * poisson_marginalize(1.0 - p + p * v, lp);
    const double second = 2.0 * first - 1.0 + e1 * e1 * poisson_marginalize(q, lp);
    const double joint = 2.0 * first - 1.0 + e1 * e1 * poisson_marginalize(d, lp);
    return {first, second, joint};
}

}  // namespace outcorr

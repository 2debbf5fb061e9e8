#include "outcorr/geom_ppp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "outcorr/geom_bpp.hpp"

namespace outcorr {

double poisson_marginalize(double per_interferer_factor, double mean_count) {
    // tolerate quadrature round-off just outside [0, 1]
    if (!(per_interferer_factor > -1e-9 && per_interferer_factor < 1.0 + 1e-9))
        throw std::domain_error("poisson_marginalize: factor must lie in [0, 1]");
    if (!(mean_count >= 0.0))
        throw std::domain_error("poisson_marginalize: mean_count must be >= 0");
    const double g = std::clamp(per_interferer_factor, 0.0, 1.0);
    return std::exp(-mean_count * (1.0 - g));
}

MomentSet ppp_moments(const PppModel& model, const Geometry& geom,
                      const SystemParams& params, double theta, const QuadSpec& spec) {
    if (!(model.lambda >= 0.0))
        throw std::domain_error("ppp_moments: lambda must be >= 0");
    validate(geom);
    validate(params);
    const double mean = model.lambda * geom.area();
    const double p = params.p;
    const double t = t_func(geom, params, spec);
    const double sq = squared_attenuation_moment(geom, params, spec);
    const double x = x_func(geom, params, theta, spec);
    const double s = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * t + p * p * sq;
    const double w = (1.0 - p) * (1.0 - p) + 2.0 * (1.0 - p) * p * t + p * p * x;
    const double e1 = std::exp(-params.beta / params.snr);
    const double first = 1.0 - e1 * poisson_marginalize(1.0 - p + p * t, mean);
    const double second = 2.0 * first - 1.0 + e1 * e1 * poisson_marginalize(s, mean);
    const double joint = 2.0 * first - 1.0 + e1 * e1 * poisson_marginalize(w, mean);
    return {first, second, joint};
}

}  // namespace outcorr

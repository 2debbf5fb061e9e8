#include "outcorr/process.hpp"

namespace outcorr {

std::string process_name(const ProcessModel& process) {
    if (std::holds_alternative<BppModel>(process)) return "bpp";
    if (std::holds_alternative<PppModel>(process)) return "ppp";
    return "tcp";
}

double mean_interferer_count(const ProcessModel& process, const Geometry& geom) {
    if (const auto* bpp = std::get_if<BppModel>(&process)) return bpp->m;
    if (const auto* ppp = std::get_if<PppModel>(&process)) return ppp->lambda * geom.area();
    return std::get<TcpModel>(process).lambda_prime;
}

MomentSet analytic_moments(const ProcessModel& process, const Geometry& geom,
                           const SystemParams& params, double theta,
                           const QuadSpec& spec) {
    if (const auto* bpp = std::get_if<BppModel>(&process))
        return bpp_moments(*bpp, geom, params, theta, spec);
    if (const auto* ppp = std::get_if<PppModel>(&process))
        return ppp_moments(*ppp, geom, params, theta, spec);
    return tcp_moments(std::get<TcpModel>(process), geom, params, theta, spec);
}

}  // namespace outcorr

#pragma once

#include <string>
#include <variant>

#include "outcorr/geom_bpp.hpp"
#include "outcorr/geom_ppp.hpp"
#include "outcorr/geom_tcp.hpp"

namespace outcorr {

using ProcessModel = std::variant<BppModel, PppModel, TcpModel>;

std::string process_name(const ProcessModel& process);

double mean_interferer_count(const ProcessModel& process, const Geometry& geom);

// Dispatch to bpp_moments / ppp_moments / tcp_moments.
MomentSet analytic_moments(const ProcessModel& process, const Geometry& geom,
                           const SystemParams& params, double theta,
                           const QuadSpec& spec = {});

}  // namespace outcorr

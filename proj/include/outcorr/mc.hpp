#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "outcorr/correlation.hpp"
#include "outcorr/model.hpp"
#include "outcorr/process.hpp"

namespace outcorr {

struct McConfig {
    enum class Estimator {
        conditional_analytic,  // evaluate the conditional-outage closed form per topology
        fading_realized        // draw gains and access indicators, record binary outages
    };

    std::int64_t n_topologies = 100000;
    std::uint64_t seed = 1;
    Estimator estimator = Estimator::conditional_analytic;
    int threads = 0;    // 0 = hardware concurrency
    int batches = 100;  // batch-means groups for the standard errors
};

struct McEstimate {
    double zeta_hat;  // Pearson sample correlation of the (eps1, eps2) pairs; NaN if degenerate
    MomentSet moments_hat;
    struct StdErrors {
        double first;
        double second;
        double joint;
        double zeta;
    } std_errors;
    std::int64_t n;
    std::uint64_t seed;
    bool degenerate;
};

// Substream for topology k: a pure function of (seed, k), so results do not
// depend on how topologies are distributed over threads.
std::mt19937_64 topology_rng(std::uint64_t seed, std::int64_t k);

// Uniform point in the disk of radius r_out (radius via sqrt-scaling).
std::pair<double, double> uniform_disk_point(double r_out, std::mt19937_64& rng);

// Draw one interferer configuration and record both receivers' normalized
// distances. BPP: exactly m uniform points. PPP: Poisson(lambda*area) uniform
// points. TCP: Poisson(lambda') Gaussian offspring about the cluster center,
// which sits at distance nu from the transmitter along the receiver bisector
// (nu = 0: centered at the transmitter).
void sample_topology(const ProcessModel& process, const Geometry& geom, double theta,
                     std::mt19937_64& rng, Topology& out);
Topology sample_topology(const ProcessModel& process, const Geometry& geom,
                         double theta, std::mt19937_64& rng);

// Sample the moments and the outage correlation over cfg.n_topologies draws.
// Deterministic for a fixed seed regardless of thread count.
McEstimate estimate(const ProcessModel& process, const Geometry& geom,
                    const SystemParams& params, double theta, const McConfig& cfg);

}  // namespace outcorr

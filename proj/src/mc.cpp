#include "outcorr/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "outcorr/errors.hpp"

namespace outcorr {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Binary outage indicators from explicit fading and access draws: an SINR-level
// cross-check of the conditional closed form.
void realized_outage_pair(const SystemParams& params, Topology& topo,
                          std::mt19937_64& rng, double& out1, double& out2) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    const std::size_t m = topo.r1.size();
    topo.active.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        topo.active[i] = unit(rng) < params.p ? 1 : 0;
    const double g01 = expo(rng);
    const double g02 = expo(rng);
    double interference1 = 0.0;
    double interference2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double g1 = expo(rng);
        const double g2 = expo(rng);
        if (!topo.active[i]) continue;
        interference1 += g1 * std::pow(topo.r1[i], -params.alpha);
        interference2 += g2 * std::pow(topo.r2[i], -params.alpha);
    }
    const double inv_snr = 1.0 / params.snr;
    out1 = g01 / (inv_snr + interference1) <= params.beta ? 1.0 : 0.0;
    out2 = g02 / (inv_snr + interference2) <= params.beta ? 1.0 : 0.0;
}

struct BatchStats {
    double first;
    double second;
    double joint;
    double zeta;
};

double stderr_of(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (static_cast<double>(n) - 1.0) / static_cast<double>(n));
}

// Pearson correlation of paired samples; exact 1 when the pairs are identical.
double pearson(const double* x, const double* y, std::int64_t n, bool& degenerate) {
    long double sx = 0.0L, sy = 0.0L, sxx = 0.0L, syy = 0.0L, sxy = 0.0L;
    for (std::int64_t k = 0; k < n; ++k) {
        sx += x[k];
        sy += y[k];
        sxx += static_cast<long double>(x[k]) * x[k];
        syy += static_cast<long double>(y[k]) * y[k];
        sxy += static_cast<long double>(x[k]) * y[k];
    }
    const long double nn = static_cast<long double>(n);
    const long double vx = sxx / nn - (sx / nn) * (sx / nn);
    const long double vy = syy / nn - (sy / nn) * (sy / nn);
    const long double cxy = sxy / nn - (sx / nn) * (sy / nn);
    if (!(vx > 0.0L) || !(vy > 0.0L)) {
        degenerate = true;
        return std::numeric_limits<double>::quiet_NaN();
    }
    degenerate = false;
    if (cxy == vx && vx == vy) return 1.0;  // identical streams (theta = 0)
    return static_cast<double>(cxy / std::sqrt(vx * vy));
}

}  // namespace

std::mt19937_64 topology_rng(std::uint64_t seed, std::int64_t k) {
    const std::uint64_t mixed =
        splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k)));
    return std::mt19937_64(mixed);
}

std::pair<double, double> uniform_disk_point(double r_out, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double radius = r_out * std::sqrt(unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

void sample_topology(const ProcessModel& process, const Geometry& geom, double theta,
                     std::mt19937_64& rng, Topology& out) {
    out.r1.clear();
    out.r2.clear();
    out.active.clear();
    const double y1x = geom.r0;
    const double y1y = 0.0;
    const double y2x = geom.r0 * std::cos(theta);
    const double y2y = geom.r0 * std::sin(theta);
    const double inv_r0 = 1.0 / geom.r0;
    const auto push_point = [&](double px, double py) {
        const double dx1 = px - y1x, dy1 = py - y1y;
        const double dx2 = px - y2x, dy2 = py - y2y;
        out.r1.push_back(std::sqrt(dx1 * dx1 + dy1 * dy1) * inv_r0);
        out.r2.push_back(std::sqrt(dx2 * dx2 + dy2 * dy2) * inv_r0);
    };
    const auto poisson_count = [&rng](double mean) {
        if (!(mean > 0.0)) return 0;
        std::poisson_distribution<int> dist(mean);
        return dist(rng);
    };
    if (const auto* bpp = std::get_if<BppModel>(&process)) {
        if (bpp->m < 0) throw std::domain_error("sample_topology: m must be >= 0");
        for (int i = 0; i < bpp->m; ++i) {
            const auto [px, py] = uniform_disk_point(geom.r_out, rng);
            push_point(px, py);
        }
    } else if (const auto* ppp = std::get_if<PppModel>(&process)) {
        if (!(ppp->lambda >= 0.0))
            throw std::domain_error("sample_topology: lambda must be >= 0");
        const int n = poisson_count(ppp->lambda * geom.area());
        for (int i = 0; i < n; ++i) {
            const auto [px, py] = uniform_disk_point(geom.r_out, rng);
            push_point(px, py);
        }
    } else {
        const auto& tcp = std::get<TcpModel>(process);
        validate(tcp);
        const int n = poisson_count(tcp.lambda_prime);
        // the center sits on the receiver bisector, keeping the receivers exchangeable
        const double cx = tcp.nu * std::cos(0.5 * theta);
        const double cy = tcp.nu * std::sin(0.5 * theta);
        std::normal_distribution<double> scatter(0.0, tcp.sigma);
        for (int i = 0; i < n; ++i) {
            const double px = cx + scatter(rng);
            const double py = cy + scatter(rng);
            push_point(px, py);
        }
    }
}

Topology sample_topology(const ProcessModel& process, const Geometry& geom, double theta,
                         std::mt19937_64& rng) {
    Topology topo;
    sample_topology(process, geom, theta, rng, topo);
    return topo;
}

McEstimate estimate(const ProcessModel& process, const Geometry& geom,
                    const SystemParams& params, double theta, const McConfig& cfg) {
    if (cfg.n_topologies < 1)
        throw std::domain_error("estimate: n_topologies must be >= 1");
    if (cfg.batches < 1) throw std::domain_error("estimate: batches must be >= 1");
    validate(geom);
    validate(params);
    const std::int64_t n = cfg.n_topologies;
    std::vector<double> eps1(n);
    std::vector<double> eps2(n);

    const auto run_range = [&](std::int64_t k0, std::int64_t k1) {
        Topology topo;
        for (std::int64_t k = k0; k < k1; ++k) {
            auto rng = topology_rng(cfg.seed, k);
            sample_topology(process, geom, theta, rng, topo);
            if (cfg.estimator == McConfig::Estimator::conditional_analytic) {
                eps1[k] = conditional_outage(params, topo.r1);
                eps2[k] = conditional_outage(params, topo.r2);
            } else {
                realized_outage_pair(params, topo, rng, eps1[k], eps2[k]);
            }
        }
    };

    const int threads = std::min<std::int64_t>(resolve_threads(cfg.threads), n);
    if (threads <= 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            const std::int64_t k0 = n * t / threads;
            const std::int64_t k1 = n * (t + 1) / threads;
            pool.emplace_back(run_range, k0, k1);
        }
        for (auto& th : pool) th.join();
    }

    // reduction in fixed index order: independent of the thread layout above
    long double s1 = 0.0L, s2 = 0.0L, s11 = 0.0L, s22 = 0.0L, s12 = 0.0L;
    for (std::int64_t k = 0; k < n; ++k) {
        s1 += eps1[k];
        s2 += eps2[k];
        s11 += static_cast<long double>(eps1[k]) * eps1[k];
        s22 += static_cast<long double>(eps2[k]) * eps2[k];
        s12 += static_cast<long double>(eps1[k]) * eps2[k];
    }
    const long double nn = static_cast<long double>(n);
    MomentSet moments{static_cast<double>((s1 + s2) / (2.0L * nn)),
                      static_cast<double>((s11 + s22) / (2.0L * nn)),
                      static_cast<double>(s12 / nn)};

    bool pearson_degenerate = false;
    double zeta_hat = pearson(eps1.data(), eps2.data(), n, pearson_degenerate);
    const bool degenerate =
        pearson_degenerate ||
        (moments.second - moments.first * moments.first) < 1e-12;
    if (degenerate) zeta_hat = std::numeric_limits<double>::quiet_NaN();

    const int nb = static_cast<int>(std::min<std::int64_t>(cfg.batches, n));
    std::vector<double> bf, bs, bj, bz;
    bf.reserve(nb);
    bs.reserve(nb);
    bj.reserve(nb);
    bz.reserve(nb);
    bool batch_zeta_ok = !degenerate;
    for (int b = 0; b < nb; ++b) {
        const std::int64_t k0 = n * b / nb;
        const std::int64_t k1 = n * (b + 1) / nb;
        const std::int64_t bn = k1 - k0;
        if (bn <= 0) continue;
        long double t1 = 0.0L, t2 = 0.0L, t11 = 0.0L, t22 = 0.0L, t12 = 0.0L;
        for (std::int64_t k = k0; k < k1; ++k) {
            t1 += eps1[k];
            t2 += eps2[k];
            t11 += static_cast<long double>(eps1[k]) * eps1[k];
            t22 += static_cast<long double>(eps2[k]) * eps2[k];
            t12 += static_cast<long double>(eps1[k]) * eps2[k];
        }
        const long double bnn = static_cast<long double>(bn);
        bf.push_back(static_cast<double>((t1 + t2) / (2.0L * bnn)));
        bs.push_back(static_cast<double>((t11 + t22) / (2.0L * bnn)));
        bj.push_back(static_cast<double>(t12 / bnn));
        if (batch_zeta_ok && bn >= 2) {
            bool bad = false;
            const double z = pearson(eps1.data() + k0, eps2.data() + k0, bn, bad);
            if (bad)
                batch_zeta_ok = false;
            else
                bz.push_back(z);
        }
    }
    McEstimate::StdErrors se{stderr_of(bf), stderr_of(bs), stderr_of(bj),
                             batch_zeta_ok ? stderr_of(bz)
                                           : std::numeric_limits<double>::quiet_NaN()};
    return {zeta_hat, moments, se, n, cfg.seed, degenerate};
}

}  // namespace outcorr

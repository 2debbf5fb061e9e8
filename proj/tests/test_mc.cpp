#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "outcorr/geom_tcp.hpp"
#include "outcorr/mc.hpp"

using namespace outcorr;

namespace {

const Geometry kGeom{1.0, 0.25};
const SystemParams kRadio{3.5, 10.0, 1.0, 0.1};

// Wilson-Hilferty approximation to the chi-square 99% quantile.
double chi2_q99(int dof) {
    const double z = 2.3263478740408408;
    const double u = 2.0 / (9.0 * dof);
    const double t = 1.0 - u + z * std::sqrt(u);
    return dof * t * t * t;
}

}  // namespace

TEST_CASE("topology substreams are pure functions of (seed, k)") {
    auto a = topology_rng(42, 7);
    auto b = topology_rng(42, 7);
    CHECK(a() == b());
    auto c = topology_rng(42, 8);
    auto d = topology_rng(43, 7);
    CHECK(a() != c());
    CHECK(b() != d());
}

TEST_CASE("BPP with M = 0 yields an empty topology") {
    auto rng = topology_rng(1, 0);
    const Topology topo = sample_topology(BppModel{0}, kGeom, 1.0, rng);
    CHECK(topo.r1.empty());
    CHECK(topo.r2.empty());
}

TEST_CASE("sampled pair counts and positivity") {
    auto rng = topology_rng(5, 3);
    const Topology topo = sample_topology(BppModel{100}, kGeom, 0.7, rng);
    REQUIRE(topo.r1.size() == 100);
    REQUIRE(topo.r2.size() == 100);
    for (std::size_t i = 0; i < topo.r1.size(); ++i) {
        CHECK(topo.r1[i] >= 0.0);
        CHECK(topo.r2[i] >= 0.0);
        CHECK(topo.r1[i] <= kGeom.tau2() + 1e-12);
    }
}

TEST_CASE("estimates are bit-identical across thread counts and reruns") {
    McConfig cfg;
    cfg.n_topologies = 5000;
    cfg.seed = 2024;
    cfg.threads = 1;
    const double theta = 1.1;
    const McEstimate one = estimate(BppModel{10}, kGeom, kRadio, theta, cfg);
    cfg.threads = 2;
    const McEstimate two = estimate(BppModel{10}, kGeom, kRadio, theta, cfg);
    cfg.threads = 4;
    const McEstimate four = estimate(BppModel{10}, kGeom, kRadio, theta, cfg);
    CHECK(one.zeta_hat == two.zeta_hat);
    CHECK(one.zeta_hat == four.zeta_hat);
    CHECK(one.moments_hat.first == two.moments_hat.first);
    CHECK(one.moments_hat.second == four.moments_hat.second);
    CHECK(one.moments_hat.joint == two.moments_hat.joint);
    CHECK(one.std_errors.zeta == two.std_errors.zeta);
    // different seed moves the estimate
    cfg.seed = 2025;
    const McEstimate other = estimate(BppModel{10}, kGeom, kRadio, theta, cfg);
    CHECK(other.zeta_hat != one.zeta_hat);
}

TEST_CASE("empirical radial CDF of the disk sampler matches d^2/r_out^2") {
    auto rng = topology_rng(77, 0);
    const int n = 1000000;
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) {
        const auto [x, y] = uniform_disk_point(1.0, rng);
        radii[i] = std::sqrt(x * x + y * y);
    }
    std::sort(radii.begin(), radii.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double model_cdf = radii[i] * radii[i];
        const double hi = static_cast<double>(i + 1) / n;
        const double lo = static_cast<double>(i) / n;
        ks = std::max({ks, std::abs(hi - model_cdf), std::abs(model_cdf - lo)});
    }
    CHECK(ks < 0.002);
}

TEST_CASE("TCP offspring distances follow the Rician density (chi-square fit)") {
    // pooled normalized receiver distances across topologies are iid draws from
    // tcp_distance_pdf at the effective normalized parameters
    const TcpModel model{5.0, 0.25, 0.0};
    const TcpModel norm = effective_normalized_model(model, kGeom);
    std::vector<double> samples;
    samples.reserve(1100000);
    Topology topo;
    for (std::int64_t k = 0; samples.size() < 1000000; ++k) {
        auto rng = topology_rng(31415, k);
        sample_topology(model, kGeom, 0.9, rng, topo);
        samples.insert(samples.end(), topo.r1.begin(), topo.r1.end());
    }
    const int raw_bins = 50;
    const double lo = 0.0, hi = 6.0;
    std::vector<double> observed(raw_bins + 1, 0.0);
    for (double s : samples) {
        const int bin = s >= hi ? raw_bins
                                : std::min(raw_bins - 1,
                                           static_cast<int>((s - lo) / (hi - lo) * raw_bins));
        observed[bin] += 1.0;
    }
    const double n = static_cast<double>(samples.size());
    std::vector<double> expected(raw_bins + 1, 0.0);
    double tail = 1.0;
    for (int b = 0; b < raw_bins; ++b) {
        const double a = lo + (hi - lo) * b / raw_bins;
        const double c = lo + (hi - lo) * (b + 1) / raw_bins;
        expected[b] = n * integrate_1d(
                              [&](double r) { return tcp_distance_pdf(norm, r); }, a, c,
                              {1e-12, 1e-10, 2000});
        tail -= expected[b] / n;
    }
    expected[raw_bins] = n * std::max(tail, 0.0);
    // merge adjacent bins until every expected count is at least 10
    std::vector<double> obs_m, exp_m;
    double o_acc = 0.0, e_acc = 0.0;
    for (int b = 0; b <= raw_bins; ++b) {
        o_acc += observed[b];
        e_acc += expected[b];
        if (e_acc >= 10.0) {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !exp_m.empty()) {
        obs_m.back() += o_acc;
        exp_m.back() += e_acc;
    }
    REQUIRE(exp_m.size() >= 10);
    double chi2 = 0.0;
    for (std::size_t b = 0; b < exp_m.size(); ++b) {
        const double d = obs_m[b] - exp_m[b];
        chi2 += d * d / exp_m[b];
    }
    CHECK(chi2 < chi2_q99(static_cast<int>(exp_m.size()) - 1));
}

TEST_CASE("theta = 0 makes the conditional-analytic correlation exactly 1") {
    McConfig cfg;
    cfg.n_topologies = 2000;
    cfg.seed = 9;
    const McEstimate est = estimate(BppModel{5}, kGeom, kRadio, 0.0, cfg);
    CHECK_FALSE(est.degenerate);
    CHECK(est.zeta_hat == 1.0);
}

TEST_CASE("p = 0 is flagged degenerate") {
    SystemParams radio = kRadio;
    radio.p = 0.0;
    McConfig cfg;
    cfg.n_topologies = 1000;
    const McEstimate est = estimate(BppModel{20}, kGeom, radio, 1.0, cfg);
    CHECK(est.degenerate);
    CHECK(std::isnan(est.zeta_hat));
    CHECK(est.moments_hat.first == doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-12));
}

TEST_CASE("conditional and fading-realized estimators agree on the first moment") {
    SystemParams radio = kRadio;
    radio.p = 0.5;
    McConfig cfg;
    cfg.n_topologies = 40000;
    cfg.seed = 404;
    const McEstimate cond = estimate(BppModel{10}, kGeom, radio, 1.0, cfg);
    cfg.estimator = McConfig::Estimator::fading_realized;
    const McEstimate real = estimate(BppModel{10}, kGeom, radio, 1.0, cfg);
    const double se = std::sqrt(cond.std_errors.first * cond.std_errors.first +
                                real.std_errors.first * real.std_errors.first);
    CHECK(std::abs(cond.moments_hat.first - real.moments_hat.first) < 3.0 * se);
}

TEST_CASE("TCP cluster center sits on the receiver bisector") {
    // with nu > 0 both receivers must stay statistically equivalent
    const TcpModel model{20.0, 0.3, 0.5};
    const double theta = std::numbers::pi / 2.0;
    long double m1 = 0.0L, m2 = 0.0L;
    std::int64_t count = 0;
    Topology topo;
    for (std::int64_t k = 0; k < 20000; ++k) {
        auto rng = topology_rng(555, k);
        sample_topology(model, kGeom, theta, rng, topo);
        for (std::size_t i = 0; i < topo.r1.size(); ++i) {
            m1 += topo.r1[i];
            m2 += topo.r2[i];
            ++count;
        }
    }
    REQUIRE(count > 0);
    const double mean1 = static_cast<double>(m1 / count);
    const double mean2 = static_cast<double>(m2 / count);
    CHECK(mean1 == doctest::Approx(mean2).epsilon(0.01));
}

TEST_CASE("PPP sampled counts have the right mean") {
    const PppModel model{50.0 / std::numbers::pi};
    long double total = 0.0L;
    Topology topo;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        auto rng = topology_rng(8, k);
        sample_topology(model, kGeom, 0.3, rng, topo);
        total += static_cast<double>(topo.r1.size());
    }
    const double mean = static_cast<double>(total / n);
    // SE of the mean count is sqrt(50/n) ~ 0.05
    CHECK(std::abs(mean - 50.0) < 0.2);
}

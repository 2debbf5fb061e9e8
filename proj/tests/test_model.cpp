#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "outcorr/model.hpp"
#include "oracles.hpp"

using namespace outcorr;

namespace {
const SystemParams kRadio{3.5, 10.0, 1.0, 0.5};
}

TEST_CASE("conditional_outage with no interferers is the noise-only outage") {
    const SystemParams params{3.5, 10.0, 1.0, 0.5};
    CHECK(conditional_outage(params, {}) ==
          doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-12));
    CHECK(conditional_outage(params, {}) == doctest::Approx(0.09516258196).epsilon(1e-9));
}

TEST_CASE("conditional_outage single symmetric interferer at huge SNR") {
    const SystemParams params{3.5, 1e300, 1.0, 1.0};
    const std::vector<double> r{1.0};
    CHECK(conditional_outage(params, r) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("conditional_outage matches an extended-precision product evaluation") {
    const std::vector<double> r{0.8, 1.6, 3.0};
    const double got = conditional_outage(kRadio, r);
    const double want =
        static_cast<double>(oracles::outage_product_ld(3.5L, 1.0L, 10.0L, 0.5L,
                                                       {0.8, 1.6, 3.0}));
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
    CHECK(got == doctest::Approx(0.45928715894822671).epsilon(1e-13));
}

TEST_CASE("conditional_outage rejects negative distances and bad params") {
    const std::vector<double> bad{0.5, -0.1};
    CHECK_THROWS_AS(conditional_outage(kRadio, bad), std::domain_error);
    CHECK_THROWS_AS(conditional_outage({1.5, 10.0, 1.0, 0.5}, {}), std::domain_error);
    CHECK_THROWS_AS(conditional_outage({3.5, -1.0, 1.0, 0.5}, {}), std::domain_error);
    CHECK_THROWS_AS(conditional_outage({3.5, 10.0, 1.0, 1.5}, {}), std::domain_error);
}

TEST_CASE("adding an interferer never decreases the outage") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 6.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> r;
        for (int i = 0; i < trial % 8; ++i) r.push_back(unif(rng));
        const double before = conditional_outage(kRadio, r);
        r.push_back(unif(rng));
        const double after = conditional_outage(kRadio, r);
        CHECK(after >= before - 1e-15);
        CHECK(after >= 0.0);
        CHECK(after <= 1.0);
    }
}

TEST_CASE("outage is non-increasing in every interferer distance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> r{unif(rng), unif(rng), unif(rng)};
        const std::size_t idx = trial % 3;
        const double before = conditional_outage(kRadio, r);
        r[idx] += 0.5;
        CHECK(conditional_outage(kRadio, r) <= before + 1e-15);
    }
}

TEST_CASE("p = 0 collapses to the noise-only outage for any topology") {
    const SystemParams params{3.5, 10.0, 1.0, 0.0};
    const double noise_only = 1.0 - std::exp(-0.1);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> r;
        for (int i = 0; i < trial % 6; ++i) r.push_back(unif(rng));
        CHECK(conditional_outage(params, r) == doctest::Approx(noise_only).epsilon(1e-15));
    }
}

TEST_CASE("realized mode: exhaustive access-set average recovers the marginal") {
    // E over I of prod_{active} att equals prod (1 - p + p att) exactly
    const std::vector<double> r{0.6, 1.4, 2.2};
    const double p = kRadio.p;
    double expectation = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<std::uint8_t> active(3);
        double weight = 1.0;
        for (int i = 0; i < 3; ++i) {
            active[i] = (mask >> i) & 1;
            weight *= active[i] ? p : 1.0 - p;
        }
        expectation += weight * conditional_outage_realized(kRadio, r, active);
    }
    CHECK(expectation == doctest::Approx(conditional_outage(kRadio, r)).epsilon(1e-14));
}

TEST_CASE("realized mode edge cases") {
    const std::vector<double> r{0.5, 2.0};
    const std::vector<std::uint8_t> none{0, 0};
    CHECK(conditional_outage_realized(kRadio, r, none) ==
          doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-14));
    const std::vector<std::uint8_t> mismatched{1};
    CHECK_THROWS_AS(conditional_outage_realized(kRadio, r, mismatched),
                    std::domain_error);
}

TEST_CASE("attenuation is overflow-safe and monotone") {
    CHECK(attenuation(0.0, 3.5, 1.0) == 0.0);
    CHECK(attenuation(1e200, 3.5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(attenuation(0.5, 3.5, 1.0) < attenuation(0.6, 3.5, 1.0));
    const double r = 1.3;
    CHECK(attenuation(r, 3.5, 1.0) ==
          doctest::Approx(std::pow(r, 3.5) / (1.0 + std::pow(r, 3.5))).epsilon(1e-15));
}

TEST_CASE("geometry accessors") {
    const Geometry geom{1.0, 0.25};
    CHECK(geom.tau1() == doctest::Approx(3.0));
    CHECK(geom.tau2() == doctest::Approx(5.0));
    CHECK(geom.area() == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(validate(Geometry{1.0, 1.5}), std::domain_error);
    CHECK_THROWS_AS(validate(Geometry{1.0, 0.0}), std::domain_error);
}

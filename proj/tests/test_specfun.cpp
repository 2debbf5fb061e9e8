#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "outcorr/errors.hpp"
#include "outcorr/specfun.hpp"
#include "oracles.hpp"

using namespace outcorr;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("gauss_2f1 at z = 0 is the empty product") {
    CHECK(gauss_2f1(1.0, 2.0, 3.0, 0.0) == 1.0);
}

TEST_CASE("gauss_2f1 log identity: 2F1([1,1];2;z) = -ln(1-z)/z") {
    CHECK(gauss_2f1(1.0, 1.0, 2.0, -1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.25) ==
          doctest::Approx(-std::log(0.75) / 0.25).epsilon(1e-13));
}

TEST_CASE("gauss_2f1 against the Euler-integral quadrature oracle") {
    const double alpha = 3.5, beta = 1.0, x = 0.75;
    const double a2 = 2.0 / alpha + 1.0;
    const double b = 2.0 / alpha + 2.0;
    const double z = -std::pow(x, alpha) / beta;
    const double value = gauss_2f1(1.0, a2, b, z);
    // scaled defining integral: F = ((2+alpha)/alpha) int_0^1 v^(2/a) (1 - z v)^-1 dv
    const double oracle =
        (2.0 + alpha) / alpha *
        integrate_1d([&](double v) { return std::pow(v, 2.0 / alpha) / (1.0 - z * v); },
                     0.0, 1.0, {1e-13, 1e-12, 2000});
    CHECK(value == doctest::Approx(0.8225387945282639).epsilon(1e-10));
    CHECK(value == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("gauss_2f1 deep-negative arguments match reference values") {
    const double a = 3.5;
    // 1/z connection side, pinned against high-precision references
    CHECK(gauss_2f1(1.0, 2.0 / a + 1.0, 2.0 / a + 2.0, -500.0) ==
          doctest::Approx(0.0052240994771164348).epsilon(1e-11));
    CHECK(gauss_2f1(2.0, (2.0 + 2.0 * a) / a, (2.0 + 3.0 * a) / a, -500.0) ==
          doctest::Approx(1.6601613393005993e-05).epsilon(1e-11));
    CHECK(gauss_2f1(1.0, 2.0 / a + 1.0, 2.0 / a + 2.0, -1.0e9) ==
          doctest::Approx(2.7499635606037718e-09).epsilon(1e-10));
    CHECK(gauss_2f1(2.0, (2.0 + 2.0 * a) / a, (2.0 + 3.0 * a) / a, -1.0e9) ==
          doctest::Approx(4.4999063012668417e-18).epsilon(1e-10));
}

TEST_CASE("gauss_2f1 is continuous across the transformation seams") {
    const double a = 3.5;
    const double a2 = 2.0 / a + 1.0, b = 2.0 / a + 2.0;
    CHECK(std::abs(gauss_2f1(1.0, a2, b, -1.0 - 1e-9) -
                   gauss_2f1(1.0, a2, b, -1.0 + 1e-9)) < 1e-8);
    CHECK(std::abs(gauss_2f1(1.0, a2, b, -0.5 - 1e-9) -
                   gauss_2f1(1.0, a2, b, -0.5 + 1e-9)) < 1e-8);
    // Pfaff <-> 1/z handover
    CHECK(std::abs(gauss_2f1(1.0, a2, b, -400.001) -
                   gauss_2f1(1.0, a2, b, -399.999)) < 1e-7);
}

TEST_CASE("gauss_2f1 rejects invalid parameters") {
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, 0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, -3.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, 3.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 2.0, 3.0, 2.5), std::domain_error);
}

TEST_CASE("bessel_i0 values") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-12));
    CHECK(bessel_i0(10.0) == doctest::Approx(2815.716628466254).epsilon(1e-12));
    CHECK(bessel_i0(700.0) == doctest::Approx(1.5295933476718737e302).epsilon(1e-10));
    CHECK_THROWS_AS(bessel_i0(-0.5), std::domain_error);
    CHECK_THROWS_AS(bessel_i0_scaled(-0.5), std::domain_error);
}

TEST_CASE("bessel_i0 against the integral-representation oracle") {
    for (double x : {0.5, 1.0, 5.0, 10.0, 30.0, 120.0}) {
        CAPTURE(x);
        CHECK(bessel_i0(x) == doctest::Approx(oracles::i0_integral(x)).epsilon(1e-11));
    }
}

TEST_CASE("bessel_i0 series/asymptotic seam and scaled form") {
    CHECK(bessel_i0(17.999) * std::exp(-17.999) ==
          doctest::Approx(bessel_i0_scaled(17.999)).epsilon(1e-13));
    CHECK(bessel_i0(18.001) * std::exp(-18.001) ==
          doctest::Approx(bessel_i0_scaled(18.001)).epsilon(1e-13));
    CHECK(std::abs(bessel_i0(18.001) / bessel_i0(17.999) -
                   oracles::i0_integral(18.001) / oracles::i0_integral(17.999)) < 1e-11);
    CHECK(std::isfinite(bessel_i0_scaled(1e4)));
    CHECK(bessel_i0_scaled(1e4) > 0.0);
}

TEST_CASE("integrate_1d basics") {
    CHECK(integrate_1d([](double) { return 1.0; }, 0.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // Rayleigh normalization over the semi-infinite tail
    CHECK(integrate_1d([](double r) { return r * std::exp(-0.5 * r * r); }, 0.0, kInf) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_1d([](double) { return 2.0; }, 3.0, 3.0) == 0.0);
}

TEST_CASE("integrate_1d is exact on polynomials within the rule degree") {
    const auto poly = [](double x) { return 7.0 * std::pow(x, 6) - 3.0 * x * x + 2.0; };
    CHECK(integrate_1d(poly, 0.0, 2.0) == doctest::Approx(124.0).epsilon(1e-13));
    const auto deg13 = [](double x) { return std::pow(x, 13); };
    CHECK(integrate_1d(deg13, 0.0, 1.0) == doctest::Approx(1.0 / 14.0).epsilon(1e-13));
}

TEST_CASE("integrate_1d error paths") {
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 1.0, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, -kInf, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, {0.0, 1e-8, 10}),
                    std::domain_error);
    // integrable singularity with a starved budget: must report the best estimate
    const auto singular = [](double x) { return std::pow(std::abs(x - 1.0 / 3.0), -0.9); };
    try {
        integrate_1d(singular, 0.0, 1.0, {1e-12, 1e-12, 4});
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("integrate_2d_polar trivials") {
    CHECK(integrate_2d_polar([](double, double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(integrate_2d_polar([](double, double phi) { return std::cos(phi); })) <
          1e-10);
    // separable check: f = rho * sin^2(phi) -> (1/2) * (1/2)
    CHECK(integrate_2d_polar([](double rho, double phi) {
              return rho * std::sin(phi) * std::sin(phi);
          }) == doctest::Approx(0.25).epsilon(1e-10));
}

#include <doctest.h>

#include <cmath>

#include "displab/bessel.hpp"
#include "oracles.hpp"

using namespace displab;

TEST_CASE("normalization: J0(0) = 2 pi") {
    CHECK(bessel_j0(0.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(bessel_j0(1.3) == bessel_j0(-1.3));
}

TEST_CASE("first positive zero from the defining integral") {
    double zero = oracles::bisect_zero(
        [](double s) { return oracles::j0_quadrature(s); }, 2.0, 3.0);
    CHECK(zero == doctest::Approx(2.404826).epsilon(1e-6));
    double ours = oracles::bisect_zero(
        [](double s) { return bessel_j0(s); }, 2.0, 3.0);
    CHECK(ours == doctest::Approx(zero).epsilon(1e-10));
}

TEST_CASE("agreement with quadrature across the series/asymptotic switch") {
    for (double s : {0.5, 3.0, 8.0, 11.5, 11.9999, 12.0001, 12.5, 16.0,
                     25.0, 60.0}) {
        double q = oracles::j0_quadrature(s, 40000);
        CHECK(std::fabs(bessel_j0(s) - q) < 2e-8);
    }
}

TEST_CASE("agreement with the standard library Bessel") {
    for (int i = 0; i <= 300; ++i) {
        double s = 0.05 + i * (400.0 - 0.05) / 300.0;
        double ref = 2.0 * M_PI * std::cyl_bessel_j(0.0, s);
        CHECK(std::fabs(bessel_j0(s) - ref) < 5e-9);
    }
}

TEST_CASE("square-root decay envelope") {
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        double s = i * 2.5;  // up to 10^4
        worst = std::max(worst, std::fabs(bessel_j0(s)) * std::sqrt(1.0 + s));
    }
    CHECK(worst < 7.0);  // |J0_std| sqrt(1+s) peaks near 1.1
}

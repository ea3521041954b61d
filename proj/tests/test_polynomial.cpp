#include <doctest.h>

#include <cmath>
#include <random>

#include "displab/polynomial.hpp"
#include "oracles.hpp"

using namespace displab;

TEST_CASE("roots with multiplicity") {
    // z^2 - 1 on (0, inf)
    auto r1 = real_roots(RealPolynomial({-1.0, 0.0, 1.0}), 0.0, 1e30);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].first == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1[0].second == 1);

    // (z-2)^3
    auto r2 = real_roots(RealPolynomial({-8.0, 12.0, -6.0, 1.0}), 0.0, 1e30);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].first == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r2[0].second == 3);

    // all-positive coefficients: no positive roots
    auto r3 = real_roots(RealPolynomial({1.0, 4.0, 3.0}), 0.0, 1e30);
    CHECK(r3.empty());
}

TEST_CASE("square-free decomposition against deflation") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        // random roots with random multiplicities, product built exactly
        int nroots = 1 + static_cast<int>(oracles::uniform01(rng) * 3);
        RealPolynomial p({1.0});
        std::vector<std::pair<double, int>> truth;
        for (int i = 0; i < nroots; ++i) {
            double r = 0.25 + 3.0 * oracles::uniform01(rng);
            // keep roots separated
            bool clash = false;
            for (auto& [rr, mm] : truth)
                if (std::fabs(rr - r) < 0.15) clash = true;
            if (clash) continue;
            int m = 1 + static_cast<int>(oracles::uniform01(rng) * 3);
            truth.emplace_back(r, m);
            for (int j = 0; j < m; ++j)
                p = p * RealPolynomial({-r, 1.0});
        }
        auto found = real_roots(p, 0.0, 1e6);
        REQUIRE(found.size() == truth.size());
        std::sort(truth.begin(), truth.end());
        for (size_t i = 0; i < truth.size(); ++i) {
            CHECK(found[i].first ==
                  doctest::Approx(truth[i].first).epsilon(1e-8));
            CHECK(found[i].second == truth[i].second);
            CHECK(found[i].second == oracles::multiplicity_by_deflation(
                                         p.c, found[i].first));
        }
    }
}

TEST_CASE("polynomial arithmetic basics") {
    RealPolynomial a({1.0, 2.0});        // 1 + 2z
    RealPolynomial b({0.0, 0.0, 3.0});   // 3z^2
    CHECK((a * b).degree() == 3);
    CHECK((a + b)(2.0) == doctest::Approx(1 + 4 + 12.0));
    CHECK(a.derivative()(5.0) == 2.0);
    RealPolynomial zero = a - a;
    zero.trim(1e-15);
    CHECK(zero.is_zero());
}

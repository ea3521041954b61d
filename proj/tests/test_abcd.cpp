#include <doctest.h>

#include <cmath>
#include <random>

#include "displab/abcd.hpp"
#include "displab/phase.hpp"
#include "oracles.hpp"

using namespace displab;

namespace {

// one representative per branch row, in row order
const std::vector<std::array<double, 4>> kReps = {
    {-1, 0, -1, 0},          // 1: (ell, alpha) = (0, 1)
    {-1, 0, 0, 0},           // 2: (0, 0)
    {-1, 1, -1, 0},          // 3: (0, 0)
    {-1, 1, 0, 0},           // 4: (1, -3)
    {0, 1, 0, 0},            // 5: (0, -4)
    {0, 1, 0, 1},            // 6: (0, -3)
    {-1, 1, 0, 1},           // 7: (0, -4)
    {-1, 2, 0, 2},           // 8: (0, -6)
    {-1, 1, -1, 2},          // 9: (sqrt(1/2), -3)
    {-1, 2, -4, 4.0 / 3.0},  // 10: (sqrt(3/2), -5)
};
const std::vector<std::pair<double, double>> kExpected = {
    {0, 1},        {0, 0},  {0, 0},
    {1, -3},       {0, -4}, {0, -3},
    {0, -4},       {0, -6}, {std::sqrt(0.5), -3},
    {std::sqrt(1.5), -5},
};

std::array<double, 4> random_valid(std::mt19937_64& rng) {
    auto u = [&]() { return oracles::uniform01(rng); };
    while (true) {
        std::array<double, 4> t;
        // mix exact zeros in so every branch family gets exercised
        t[0] = u() < 0.3 ? 0.0 : -2.0 * u();
        t[1] = u() < 0.3 ? 0.0 : 2.0 * u();
        t[2] = u() < 0.3 ? 0.0 : -2.0 * u();
        t[3] = u() < 0.3 ? 0.0 : 2.0 * u();
        if (abcd_nondegenerate(t[0], t[1], t[2], t[3])) return t;
    }
}

}  // namespace

TEST_CASE("P U V R for simple parameter tuples") {
    auto p1 = compute_puvr(0, 0, 0, 1);
    CHECK(p1.P.c == std::vector<double>{1.0});
    CHECK(p1.U.c == std::vector<double>{1.0});
    CHECK(p1.V.c == std::vector<double>{1.0, 1.0});
    CHECK(p1.R.c == std::vector<double>{-3.0});  // R = -3d with d = 1

    // (-1, 0, -1, 0): P = 1 + 4z + 3z^2, U = (1+z)^2, V = 1,
    // R = 2P'U - PU' = 6 (1+z)^3 by hand expansion
    auto p2 = compute_puvr(-1, 0, -1, 0);
    REQUIRE(p2.P.degree() == 2);
    CHECK(p2.P.c[0] == doctest::Approx(1.0));
    CHECK(p2.P.c[1] == doctest::Approx(4.0));
    CHECK(p2.P.c[2] == doctest::Approx(3.0));
    CHECK(p2.U.c == std::vector<double>{1.0, 2.0, 1.0});
    CHECK(p2.V.c == std::vector<double>{1.0});
    REQUIRE(p2.R.degree() == 3);
    CHECK(p2.R.c[0] == doctest::Approx(6.0));
    CHECK(p2.R.c[1] == doctest::Approx(18.0));
    CHECK(p2.R.c[2] == doctest::Approx(18.0));
    CHECK(p2.R.c[3] == doctest::Approx(6.0));
}

TEST_CASE("degree caps on R") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        auto t = random_valid(rng);
        auto polys = compute_puvr(t[0], t[1], t[2], t[3]);
        CHECK(polys.R.degree() <= 6);
        if (t[1] * t[3] == 0.0) CHECK(polys.R.degree() <= 5);
        if (t[0] * t[2] == 0.0) CHECK(polys.R.degree() <= 4);
    }
}

TEST_CASE("constraint and degeneracy rejection") {
    CHECK_THROWS_WITH_AS(compute_puvr(1, 0, 0, 0),
                         doctest::Contains("a <= 0"), std::invalid_argument);
    CHECK_THROWS_AS(classify(0, 0, 0, 0), std::invalid_argument);
    // g(r) = r exactly: excluded by the nondegeneracy condition
    CHECK_THROWS_AS(classify(-1, 1, -1, 1), std::invalid_argument);
    CHECK(!abcd_nondegenerate(-1, 1, -1, 1));
}

TEST_CASE("derivative identity g' = P / sqrt(U V^3)") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        auto t = random_valid(rng);
        auto polys = compute_puvr(t[0], t[1], t[2], t[3]);
        PhaseModel m = make_model(ModelKind::abcd, {{"a", t[0]},
                                                    {"b", t[1]},
                                                    {"c", t[2]},
                                                    {"d", t[3]}});
        for (double y : {0.3, 0.9, 2.2, 7.5}) {
            double z = y * y;
            double expected = polys.P(z) /
                              std::sqrt(polys.U(z) * std::pow(polys.V(z), 3));
            CHECK(m.derivative(y, 1) ==
                  doctest::Approx(expected).epsilon(1e-11));
        }
    }
}

TEST_CASE("classification of the ten branch representatives") {
    for (size_t i = 0; i < kReps.size(); ++i) {
        auto [a, b, c, d] = kReps[i];
        AbcdClassification cls = classify(a, b, c, d);
        CHECK(cls.branch_row == static_cast<int>(i) + 1);
        CHECK(cls.ell == doctest::Approx(kExpected[i].first).epsilon(1e-12));
        CHECK(cls.alpha == kExpected[i].second);
    }
}

TEST_CASE("fitted curvature exponent matches the branch alpha") {
    for (size_t i = 0; i < kReps.size(); ++i) {
        auto [a, b, c, d] = kReps[i];
        AbcdClassification cls = classify(a, b, c, d);
        PhaseModel m = make_model(
            ModelKind::abcd, {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
        AsymptoticFitOptions opts;
        // steep-decay branches lose precision past y ~ 300
        opts.y_lo = cls.alpha <= -4.5 ? 15.0 : 40.0;
        opts.y_hi = cls.alpha <= -4.5 ? 150.0 : 400.0;
        AsymptoticDescriptor fit = fit_asymptotic(m, End::infinity, 2, opts);
        CHECK(fit.alpha == doctest::Approx(cls.alpha).epsilon(0.05 / 5.0));
    }
}

TEST_CASE("exactly one branch row matches each valid tuple") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 400; ++i) {
        auto t = random_valid(rng);
        AbcdClassification cls = classify(t[0], t[1], t[2], t[3]);
        CHECK(cls.branch_row >= 1);
        CHECK(cls.branch_row <= 10);
    }
}

TEST_CASE("root multiplicity m against the deflation oracle") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 200; ++i) {
        auto t = random_valid(rng);
        AbcdClassification cls = classify(t[0], t[1], t[2], t[3]);
        int m_oracle = 0;
        for (auto& [root, mult] :
             real_roots(cls.polys.R, 0.0, 1e9)) {
            (void)mult;
            m_oracle = std::max(
                m_oracle,
                oracles::multiplicity_by_deflation(cls.polys.R.c, root));
        }
        CHECK(cls.m == m_oracle);
    }
}

TEST_CASE("P, P', P'' have no common positive root") {
    CHECK(verify_p_nondegeneracy(-1, 0, -1, 0));
    CHECK(verify_p_nondegeneracy(0, 0, 0, 1));
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        auto t = random_valid(rng);
        CHECK(verify_p_nondegeneracy(t[0], t[1], t[2], t[3]));
    }
}

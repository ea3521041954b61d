#include <doctest.h>

#include <cmath>
#include <random>

#include "displab/strichartz.hpp"
#include "oracles.hpp"

using namespace displab;

TEST_CASE("sharp admissibility arithmetic is exact") {
    Rational inf = Rational::infinity();
    CHECK(is_sharp_admissible(Rational(4), Rational(4), Rational(1)));
    CHECK(!is_sharp_admissible(Rational(2), inf, Rational(1)));
    for (auto sigma : {Rational(1, 3), Rational(1, 2), Rational(1)})
        CHECK(is_sharp_admissible(inf, Rational(2), sigma));
    CHECK_THROWS_AS(
        is_sharp_admissible(Rational(3, 2), Rational(4), Rational(1)),
        std::invalid_argument);
    // off the scaling line
    CHECK(!is_sharp_admissible(Rational(4), Rational(5), Rational(1)));
}

TEST_CASE("q solved from r") {
    CHECK(q_from_r(Rational::infinity(), Rational(1, 2)) == Rational(4));
    CHECK(q_from_r(Rational::infinity(), Rational(1, 3)) == Rational(6));
    CHECK(q_from_r(Rational(2), Rational(1)).is_infinite());
}

TEST_CASE("pair sweep is admissible by construction") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::int64_t den = 1 + static_cast<std::int64_t>(
                                   oracles::uniform01(rng) * 12);
        std::int64_t num = 1 + static_cast<std::int64_t>(
                                   oracles::uniform01(rng) * den);
        Rational sigma(num, den);  // in (0, 1]
        auto pairs = pairs_for_sigma(sigma, 7);
        CHECK(!pairs.empty());
        for (const auto& p : pairs)
            CHECK(is_sharp_admissible(p.q, p.r, p.sigma));
    }
}

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("7/3") == Rational(7, 3));
    CHECK(Rational::parse("inf").is_infinite());
    CHECK(Rational(14, 6) == Rational(7, 3));
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
}

TEST_CASE("(inf, 2) spacetime norm is the initial mass") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    GridFunction u0 = gaussian_grid(1, 1024, 96.0, 2.0);
    TimeWindow window{0.0, 24.0, 33};
    double nrm = spacetime_norm(ww, u0, Rational::infinity(), Rational(2),
                                window, 1.0);
    CHECK(std::fabs(nrm - u0.norm_l2()) < 1e-10 * u0.norm_l2());
}

TEST_CASE("trivial pair quotient is exactly one") {
    PhaseModel sq = make_model(ModelKind::power, {{"alpha", 0.0}});
    auto family = standard_family(1, 1024, 96.0, 0.5, 2.0, 1.0, 99);
    AdmissiblePair pair{Rational::infinity(), Rational(2), Rational(1, 2)};
    TimeWindow window{0.0, 16.0, 33};
    QuotientReport rep =
        strichartz_quotient(sq, family, pair, 0, 1.0, 0.0, 0.0, window);
    for (double qt : rep.quotients)
        CHECK(qt == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.spread == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("non-admissible pair is rejected with the scaling identity") {
    PhaseModel sq = make_model(ModelKind::power, {{"alpha", 0.0}});
    auto family = standard_family(1, 256, 32.0, 0.5, 2.0, 1.0, 7);
    AdmissiblePair bad{Rational(3), Rational(3), Rational(1, 2)};
    TimeWindow window{0.0, 4.0, 33};
    CHECK_THROWS_AS(
        strichartz_quotient(sq, family, bad, 0, 1.0, 0.0, 0.0, window),
        std::invalid_argument);
}

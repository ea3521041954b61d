#include <doctest.h>

#include <cmath>
#include <random>

#include "displab/decay.hpp"
#include "oracles.hpp"

using namespace displab;

TEST_CASE("fit_slope on exact and noisy power laws") {
    std::vector<std::pair<double, double>> exact;
    for (double t : log_spaced(1.0, 1000.0, 12))
        exact.emplace_back(t, 3.7 * std::pow(t, -0.5));
    SlopeFit f = fit_slope(exact);
    CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(f.stderr_slope < 1e-12);

    std::mt19937_64 rng(11);
    std::vector<std::pair<double, double>> noisy;
    for (double t : log_spaced(1.0, 1000.0, 40))
        noisy.emplace_back(
            t, std::pow(t, -1.25) *
                   (1.0 + 0.01 * (2.0 * oracles::uniform01(rng) - 1.0)));
    SlopeFit g = fit_slope(noisy);
    CHECK(std::fabs(g.slope + 1.25) < 3.0 * g.stderr_slope + 1e-4);

    std::vector<std::pair<double, double>> flat;
    for (double t : log_spaced(1.0, 100.0, 9)) flat.emplace_back(t, 2.0);
    CHECK(fit_slope(flat).slope == doctest::Approx(0.0));

    std::vector<std::pair<double, double>> bad = {{1.0, 1.0}, {2.0, -1.0}};
    CHECK_THROWS_AS(fit_slope(bad), std::invalid_argument);
}

TEST_CASE("prediction: cubic power phase, low-frequency sum") {
    PhaseModel cubic = make_model(ModelKind::power, {{"alpha", 1.0}});
    FrequencyBand low = FrequencyBand::halfline_low(8.0, 1.0);
    DecayPrediction pr = predict(cubic, low, 0.0, 1, "curvature_sum_1d");
    CHECK(pr.sigma == doctest::Approx(1.0 / 3.0));
    CHECK(pr.mode == SumMode::sum_of_sups);
    // the Airy-type band sum bound carries delta^{-2(s+1)/3}
    CHECK(pr.beta == doctest::Approx(-2.0 / 3.0));
}

TEST_CASE("prediction: reduced Ostrovsky resonant weight") {
    PhaseModel red = make_model(ModelKind::reduced_ostrovsky);
    FrequencyBand low = FrequencyBand::halfline_low(4.0, 1.0);
    DecayPrediction pr = predict(red, low, -1.5, 1);
    CHECK(pr.lemma == "resonant_sum_1d");
    CHECK(pr.sigma == doctest::Approx(0.5));
    CHECK(pr.beta == doctest::Approx(1.0));  // -(1+alpha)/2 with alpha = -3
    CHECK(pr.mode == SumMode::sup_of_sum);
}

TEST_CASE("prediction: water wave 2d low frequency") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    FrequencyBand low = FrequencyBand::halfline_low(1.0, 1.0);
    DecayPrediction pr = predict(ww, low, 0.0, 2);
    CHECK(pr.lemma == "wave_lowfreq_2d");
    CHECK(pr.sigma == doctest::Approx(1.0));
    CHECK(pr.beta == doctest::Approx(-1.0));
}

TEST_CASE("prediction: ilw high-frequency resonant s = 0") {
    PhaseModel ilw = make_model(ModelKind::ilw);
    FrequencyBand high = FrequencyBand::halfline_high(2.0, 1.0);
    DecayPrediction pr = predict(ilw, high, 0.0, 1);
    CHECK(pr.lemma == "resonant_sum_1d");  // alpha = 0 at infinity, s = 0
    CHECK(pr.sigma == doctest::Approx(0.5));
    CHECK(pr.beta == doctest::Approx(-0.5));
}

TEST_CASE("prediction: bbm-kdv low-frequency window") {
    PhaseModel bbm = make_model(ModelKind::bbm_kdv, {{"p", -1.0}});
    double y0 = std::sqrt(3.0);
    FrequencyBand low = FrequencyBand::halfline_low(3.5 * y0, 1.0);
    DecayPrediction pr = predict(bbm, low, 0.0, 1);
    CHECK(pr.sigma == doctest::Approx(1.0 / 3.0));
    CHECK(pr.beta == doctest::Approx(-2.0 / 3.0));
}

TEST_CASE("no prediction for excluded or degenerate parameters") {
    // half-wave: every curvature hypothesis fails
    PhaseModel wave = make_model(ModelKind::power, {{"alpha", -1.0}});
    FrequencyBand low = FrequencyBand::halfline_low(2.0, 1.0);
    CHECK_THROWS_AS(predict(wave, low, 0.0, 1), NoPrediction);
    try {
        predict(wave, low, 0.0, 1);
    } catch (const NoPrediction& e) {
        CHECK(!e.failed.empty());
    }
    // alpha = -2 exclusion: logarithmic-type phase
    PhaseModel log_like = make_model(ModelKind::power, {{"alpha", -2.0}});
    CHECK_THROWS_AS(predict(log_like, low, 0.0, 1), NoPrediction);
    // pinned-weight mismatch for an explicit selector
    PhaseModel red = make_model(ModelKind::reduced_ostrovsky);
    CHECK_THROWS_AS(predict(red, low, 0.0, 1, "resonant_sum_1d"),
                    NoPrediction);
}

TEST_CASE("experiment rows decay monotonically for the free phase") {
    PhaseModel sq = make_model(ModelKind::power, {{"alpha", 0.0}});
    FrequencyBand band = FrequencyBand::dyadic(0, 1.0);
    SearchSpec spec;
    spec.coarse_points = 64;
    auto rows = run_decay_experiment(sq, band, 0.0, 1,
                                     log_spaced(200.0, 1600.0, 4),
                                     SumMode::single, spec);
    REQUIRE(rows.size() == 4);
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].sup < rows[i - 1].sup);
}

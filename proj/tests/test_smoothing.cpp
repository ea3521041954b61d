#include <doctest.h>

#include <cmath>

#include "displab/smoothing.hpp"
#include "oracles.hpp"

using namespace displab;

TEST_CASE("zero data gives zero integral") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    GridFunction z = GridFunction::zeros(1, 512, 128.0);
    SmoothingSpec spec;
    TimeWindow window{0.0, 32.0, 33};
    CHECK(kato_morawetz_integral(ww, z, spec, window, 1.0) == 0.0);
    CHECK(sup_x_time_integral_1d(ww, z, window, 1.0) == 0.0);
}

TEST_CASE("window monotonicity and positivity") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    GridFunction f = gaussian_grid(1, 1024, 256.0, 2.0);
    SmoothingSpec spec;
    double short_w = kato_morawetz_integral(ww, f, spec,
                                            TimeWindow{0.0, 40.0, 41}, 1.0);
    double long_w = kato_morawetz_integral(ww, f, spec,
                                           TimeWindow{0.0, 80.0, 81}, 1.0);
    CHECK(short_w > 0.0);
    CHECK(long_w >= short_w);
}

TEST_CASE("grid extent must contain the group velocity cone") {
    PhaseModel cubic = make_model(ModelKind::power, {{"alpha", 1.0}});
    GridFunction f = gaussian_grid(1, 256, 16.0, 2.0);
    SmoothingSpec spec;
    // max|g'| ~ 3 ximax^2 is far larger than 16/100
    CHECK_THROWS_WITH_AS(
        kato_morawetz_integral(cubic, f, spec, TimeWindow{0.0, 100.0, 33},
                               1.0),
        doctest::Contains("extent"), std::invalid_argument);
}

TEST_CASE("local energy curve starts at the weighted energy") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    GridFunction f = gaussian_grid(1, 1024, 256.0, 2.0);
    SmoothingSpec spec;
    spec.a = 2.0;
    auto curve = local_energy_curve(ww, f, spec, {1e-9, 10.0, 40.0}, 1.0);
    REQUIRE(curve.size() == 3);
    // t ~ 0: integral of |weighted f|^2 e^{-a x^2/2}
    GridFunction wf = f;  // recompute the weighted energy directly
    double direct = 0.0;
    {
        // |g'|^{1/2} weight applied spectrally
        auto weighted = apply_radial_multiplier(f, 1.0, [&](double y) {
            double g1 = y == 0.0 ? 1.0 : ww.derivative(y, 1);
            return std::complex<double>(std::sqrt(std::fabs(g1)), 0.0);
        });
        for (int i = 0; i < weighted.resolution; ++i) {
            double x = weighted.coord(i);
            direct += std::norm(weighted.samples[i]) *
                      std::exp(-0.5 * spec.a * x * x);
        }
        direct *= weighted.cell_volume();
    }
    CHECK(curve[0].second == doctest::Approx(direct).epsilon(1e-9));
    CHECK(curve[2].second < curve[0].second);
}

TEST_CASE("x0 translation stays comparable over centers") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    GridFunction f = gaussian_grid(1, 1024, 256.0, 2.0);
    TimeWindow window{0.0, 60.0, 49};
    double lo = 1e300, hi = 0.0;
    for (double x0 : {-20.0, -5.0, 0.0, 5.0, 20.0}) {
        SmoothingSpec spec;
        spec.x0 = x0;
        double v = kato_morawetz_integral(ww, f, spec, window, 1.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi > 0.0);
    CHECK(std::isfinite(hi));
    // the sup over centers is attained near the data, everything finite
    CHECK(hi >= lo);
}

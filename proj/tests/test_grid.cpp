#include <doctest.h>

#include <cmath>

#include "displab/grid.hpp"
#include "displab/io.hpp"
#include "oracles.hpp"

using namespace displab;

TEST_CASE("identity at t = 0 and unitarity") {
    PhaseModel ww = make_model(ModelKind::water_wave);
    GridFunction u0 = gaussian_grid(1, 1024, 64.0, 2.0);
    GridFunction id = propagate_grid(ww, u0, 0.0, 1.0);
    double worst = 0.0;
    for (size_t i = 0; i < u0.samples.size(); ++i)
        worst = std::max(worst, std::abs(id.samples[i] - u0.samples[i]));
    CHECK(worst < 1e-13);

    for (double t : {0.7, 4.0, 33.0}) {
        GridFunction u = propagate_grid(ww, u0, t, 0.5);
        CHECK(std::fabs(u.norm_l2() - u0.norm_l2()) <
              1e-12 * u0.norm_l2());
    }
    // 2d unitarity
    GridFunction v0 = gaussian_grid(2, 128, 32.0, 2.0);
    GridFunction v = propagate_grid(ww, v0, 5.0, 1.0);
    CHECK(std::fabs(v.norm_l2() - v0.norm_l2()) < 1e-12 * v0.norm_l2());
}

TEST_CASE("group property") {
    PhaseModel ilw = make_model(ModelKind::ilw);
    GridFunction u0 = gaussian_grid(1, 2048, 128.0, 1.5);
    GridFunction ab = propagate_grid(
        ilw, propagate_grid(ilw, u0, 3.0, 1.0), 7.0, 1.0);
    GridFunction once = propagate_grid(ilw, u0, 10.0, 1.0);
    double diff = 0.0;
    for (size_t i = 0; i < u0.samples.size(); ++i)
        diff += std::norm(ab.samples[i] - once.samples[i]);
    diff = std::sqrt(diff * u0.cell_volume());
    CHECK(diff < 1e-10 * u0.norm_l2());
}

TEST_CASE("free Schrodinger Gaussian closed form") {
    PhaseModel sq = make_model(ModelKind::power, {{"alpha", 0.0}});
    double w = 2.0, L = 64.0;
    int N = 2048;
    GridFunction u0 = gaussian_grid(1, N, L, w);
    for (double t : {0.5, 2.0, 5.0}) {
        GridFunction u = propagate_grid(sq, u0, t, 1.0);
        double worst = 0.0;
        for (int i = 0; i < N; ++i) {
            double x = u.coord(i);
            if (std::fabs(x) > L / 2) continue;  // grid interior
            worst = std::max(
                worst, std::abs(u.samples[i] -
                                oracles::gaussian_schrodinger(t, x, w)));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("sign-split form: half-wave is an exact translation") {
    PhaseModel half = make_model(ModelKind::power, {{"alpha", -1.0}});
    int N = 512;
    double L = 32.0;
    GridFunction u0 = grid_from_function(1, N, L, [](double x, double) {
        return std::complex<double>(std::exp(-x * x / 4.0) * (1.0 + 0.3 * x),
                                    0.0);
    });
    PropagateOptions opts;
    opts.form = PropagatorForm::sign_split_1d;
    double dx = u0.dx();
    int shift = 40;
    GridFunction u = propagate_grid(half, u0, shift * dx, 1.0, opts);
    double worst_err = 0.0, worst_imag = 0.0;
    for (int i = 0; i < N; ++i) {
        int j = (i + shift) % N;  // e^{t d/dx} u(x) = u(x + t), periodic
        worst_err = std::max(worst_err,
                             std::abs(u.samples[i] - u0.samples[j]));
        worst_imag = std::max(worst_imag, std::fabs(u.samples[i].imag()));
    }
    CHECK(worst_err < 1e-10);
    CHECK(worst_imag < 1e-10);  // real data stays real
}

TEST_CASE("singular phases require zero-mean data") {
    PhaseModel red = make_model(ModelKind::reduced_ostrovsky);
    GridFunction u0 = gaussian_grid(1, 512, 64.0, 2.0);  // nonzero mean
    CHECK_THROWS_AS(propagate_grid(red, u0, 1.0, 1.0), std::runtime_error);
    PropagateOptions opts;
    opts.zero_mean_projection = true;
    GridFunction u = propagate_grid(red, u0, 1.0, 1.0, opts);
    CHECK(u.norm_l2() > 0.0);
    CHECK(u.norm_l2() < u0.norm_l2());
}

TEST_CASE("grid binary round trip") {
    GridFunction g = gaussian_grid(2, 32, 8.0, 1.0);
    g.samples[5] = {1.25, -2.5};
    write_grid("roundtrip_grid.bin", g);
    GridFunction h = read_grid("roundtrip_grid.bin");
    CHECK(h.n == 2);
    CHECK(h.resolution == 32);
    CHECK(h.extent == 8.0);
    REQUIRE(h.samples.size() == g.samples.size());
    for (size_t i = 0; i < g.samples.size(); ++i)
        CHECK(g.samples[i] == h.samples[i]);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridFunction::zeros(1, 100, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction::zeros(3, 64, 8.0), std::invalid_argument);
    GridFunction g = GridFunction::zeros(1, 64, 8.0);
    CHECK(grid_max_scaled_freq(g, 2.0) ==
          doctest::Approx(2.0 * M_PI / 8.0 * 32.0));
}

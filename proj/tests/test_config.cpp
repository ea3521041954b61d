#include <doctest.h>

#include "displab/config.hpp"
#include "displab/experiment.hpp"

using namespace displab;

TEST_CASE("config parsing") {
    Config cfg = Config::from_string(
        "# comment\n"
        "model.kind = water_wave\n"
        "model.mu = 0.25   # trailing comment\n"
        "t.min = 10\n"
        "delta.grid = 1, 0.5, 0.25\n"
        "\n"
        "n = 2\n");
    CHECK(cfg.get_string("model.kind") == "water_wave");
    CHECK(cfg.get_double("model.mu") == 0.25);
    CHECK(cfg.get_int("n") == 2);
    CHECK(cfg.get_double("missing", 7.0) == 7.0);
    auto grid = cfg.get_list("delta.grid");
    REQUIRE(grid.size() == 3);
    CHECK(grid[1] == 0.5);
    auto sec = cfg.section("model");
    CHECK(sec.at("kind") == "water_wave");
    CHECK(sec.at("mu") == "0.25");
}

TEST_CASE("config errors carry line information") {
    CHECK_THROWS_WITH_AS(Config::from_string("key value\n"),
                         doctest::Contains("line 1"), ConfigError);
    Config cfg = Config::from_string("x = abc\n");
    CHECK_THROWS_AS(cfg.get_double("x"), ConfigError);
    CHECK_THROWS_AS(cfg.get_string("nope"), ConfigError);
}

TEST_CASE("model and band construction from config") {
    Config cfg = Config::from_string(
        "model.kind = bbm_kdv\n"
        "model.p = -1\n"
        "band.kind = window\n"
        "band.y0 = 0.5\n"
        "band.y1 = 4\n");
    PhaseModel m = model_from_config(cfg);
    CHECK(m.kind() == ModelKind::bbm_kdv);
    FrequencyBand band = band_from_config(cfg, 0.5);
    CHECK(band.kind == BandKind::window);
    CHECK(band.delta == 0.5);

    Config bad = Config::from_string("model.kind = nonsense\n");
    CHECK_THROWS_AS(model_from_config(bad), std::invalid_argument);
}

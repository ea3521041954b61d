#include <CLI11.hpp>
#include <iostream>

#include "displab/experiment.hpp"

using displab::Config;

namespace {

// merge --set key=value overrides into a config
void apply_overrides(Config& cfg, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw displab::ConfigError("--set expects key=value, got '" + kv +
                                       "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
}

Config load_config(const std::string& path,
                   const std::vector<std::string>& sets) {
    Config cfg = path.empty() ? Config() : Config::from_file(path);
    apply_overrides(cfg, sets);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"displab: dispersive decay, Strichartz and smoothing "
                 "experiments for radial phases"};
    app.require_subcommand(1);

    std::string config_path, out_prefix = "displab_out", in_path, out_path;
    std::vector<std::string> sets;
    bool svg = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "experiment config file");
        sub->add_option("--set", sets, "override config entries (key=value)");
        sub->add_option("-o,--out", out_prefix, "output path prefix");
    };

    auto* decay = app.add_subcommand("decay", "empirical decay slopes vs the "
                                              "predicted exponent triple");
    add_common(decay);
    decay->add_flag("--svg", svg, "also write a log-log SVG plot");

    auto* classify =
        app.add_subcommand("classify", "abcd parameter classification");
    double a = 0, b = 0, c = 0, d = 0;
    classify->add_option("--a", a, "parameter a")->required();
    classify->add_option("--b", b, "parameter b")->required();
    classify->add_option("--c", c, "parameter c")->required();
    classify->add_option("--d", d, "parameter d")->required();
    std::string classify_json;
    classify->add_option("--json", classify_json, "write the record here");

    auto* strich = app.add_subcommand("strichartz",
                                      "space-time norm quotients for an "
                                      "admissible pair");
    add_common(strich);

    auto* smooth = app.add_subcommand(
        "smoothing", "Gaussian-window smoothing/Morawetz integrals");
    add_common(smooth);
    smooth->add_flag("--svg", svg, "also write a log-log SVG plot");

    auto* prop = app.add_subcommand("propagate", "apply the propagator to a "
                                                 "binary grid file");
    add_common(prop);
    prop->add_option("--in", in_path, "input grid")->required();
    prop->add_option("--out-grid", out_path, "output grid")->required();

    auto* self = app.add_subcommand("selftest", "run the invariant battery");
    std::string self_dir = ".";
    self->add_option("--out-dir", self_dir, "where to write artifacts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (decay->parsed())
            return displab::run_decay_cli(load_config(config_path, sets),
                                          out_prefix, svg);
        if (classify->parsed())
            return displab::run_classify_cli(a, b, c, d, classify_json);
        if (strich->parsed())
            return displab::run_strichartz_cli(load_config(config_path, sets),
                                               out_prefix);
        if (smooth->parsed())
            return displab::run_smoothing_cli(load_config(config_path, sets),
                                              out_prefix, svg);
        if (prop->parsed())
            return displab::run_propagate_cli(load_config(config_path, sets),
                                              in_path, out_path);
        if (self->parsed()) return displab::run_selftest_cli(self_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

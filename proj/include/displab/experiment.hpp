#pragma once

#include <string>

#include "displab/config.hpp"
#include "displab/decay.hpp"
#include "displab/paley.hpp"
#include "displab/phase.hpp"

namespace displab {

/// Build a model from the config's model.* section (model.kind plus flat
/// numeric parameters).
PhaseModel model_from_config(const Config& cfg);

/// Build a band from band.kind / band.k / band.y0 / band.y1 / delta.
FrequencyBand band_from_config(const Config& cfg, double delta);

QuadOptions quad_options_from_config(const Config& cfg);
SearchSpec search_spec_from_config(const Config& cfg);

/// Experiment runners return the process exit status: 0 ok, 2 verdict
/// failure. Errors propagate as exceptions (status 1 at the CLI boundary).
int run_decay_cli(const Config& cfg, const std::string& out_prefix,
                  bool emit_svg);
int run_classify_cli(double a, double b, double c, double d,
                     const std::string& json_path);
int run_strichartz_cli(const Config& cfg, const std::string& out_prefix);
int run_smoothing_cli(const Config& cfg, const std::string& out_prefix,
                      bool emit_svg);
int run_propagate_cli(const Config& cfg, const std::string& in_path,
                      const std::string& out_path);
int run_selftest_cli(const std::string& out_dir);

}  // namespace displab

#pragma once

#include <string>
#include <vector>

#include "displab/quadrature.hpp"

namespace displab {

/// Predicted decay of a localized propagator integral:
///   sup_x |I^s| <= C 2^{gamma k} delta^{beta} / |t|^{sigma}.
struct DecayPrediction {
    double sigma = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double s = 0.0;
    int n = 1;
    std::string lemma;   // estimate family identifier
    SumMode mode = SumMode::single;
    int p = 0;           // derivative order used (VdC-type bounds)
    int l = 0;           // combined-derivative order, when used
    double alpha = std::numeric_limits<double>::quiet_NaN();
    int g2_zero_count = -1;
    std::vector<std::string> notes;  // verified predicates
};

class NoPrediction : public std::runtime_error {
  public:
    NoPrediction(const std::string& msg, std::vector<std::string> failed_list)
        : std::runtime_error(msg), failed(std::move(failed_list)) {}
    std::vector<std::string> failed;
};

/// Derive the (sigma, beta, gamma) triple for a model/band/weight from the
/// decay-estimate table. selector = "auto" picks the strongest verified
/// estimate; an explicit identifier verifies only that one. l_hint forces
/// the combined-derivative order where the estimate has one free.
DecayPrediction predict(const PhaseModel& model, const FrequencyBand& band,
                        double s, int n, const std::string& selector = "auto",
                        int l_hint = 0);

/// All estimate identifiers predict() knows about.
std::vector<std::string> known_lemmas(int n);

struct DecayExperimentRow {
    double t = 0.0;
    double sup = 0.0;
    double argmax_x = 0.0;
};

std::vector<double> log_spaced(double lo, double hi, int count);

/// Empirical left-hand side of a decay estimate on a log-spaced time grid;
/// parallel over t.
std::vector<DecayExperimentRow> run_decay_experiment(
    const PhaseModel& model, const FrequencyBand& band, double s, int n,
    const std::vector<double>& t_grid, SumMode mode,
    const SearchSpec& spec = {}, const QuadOptions& opts = {});

struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double residual = 0.0;  // rms residual of the log-log fit
    int count = 0;
    double x_lo = 0.0, x_hi = 0.0;
};

/// Ordinary least squares on (log t, log v); v must be positive.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& samples);
SlopeFit fit_slope(const std::vector<DecayExperimentRow>& rows);

/// Fitted delta-exponent at fixed t over a delta grid, for comparison with
/// prediction beta.
SlopeFit delta_scaling_experiment(const PhaseModel& model,
                                  const FrequencyBand& band_proto, double s,
                                  int n, double t_fixed,
                                  const std::vector<double>& deltas,
                                  SumMode mode, const SearchSpec& spec = {},
                                  const QuadOptions& opts = {});

}  // namespace displab

#pragma once

#include <vector>

#include "displab/grid.hpp"
#include "displab/strichartz.hpp"

namespace displab {

/// Gaussian-window smoothing/Morawetz setup: weight exp(-a|x-x0|^2/2) in
/// space, spectral weight |g'(delta|xi|)|^{1/2} on the data.
struct SmoothingSpec {
    double a = 1.0;        // Gaussian width parameter, > 0
    double x0 = 0.0;       // window center (applied on each axis for n = 2)
    double x0y = 0.0;
    bool apply_weight = true;  // multiply by |g'(delta|D|)|^{1/2}
};

/// int_t int_x |(|g'|^{1/2} e^{i(t/delta)g} f)(x)|^2 e^{-a|x-x0|^2/2} dx dt
/// over the finite window, trapezoid in t, cell sums in x. Nonnegative and
/// nondecreasing in the window length.
double kato_morawetz_integral(const PhaseModel& model, const GridFunction& f,
                              const SmoothingSpec& spec,
                              const TimeWindow& window, double delta,
                              const PropagateOptions& popts = {});

/// n = 1 strengthening: sup over grid x of int |u(t,x)|^2 dt.
double sup_x_time_integral_1d(const PhaseModel& model, const GridFunction& f,
                              const TimeWindow& window, double delta,
                              bool apply_weight = true,
                              const PropagateOptions& popts = {});

/// Weighted local energy E(t) on a time grid.
std::vector<std::pair<double, double>> local_energy_curve(
    const PhaseModel& model, const GridFunction& f, const SmoothingSpec& spec,
    const std::vector<double>& t_grid, double delta,
    const PropagateOptions& popts = {});

}  // namespace displab

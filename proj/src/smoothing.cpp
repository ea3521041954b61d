#include "displab/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "displab/parallel.hpp"

namespace displab {

namespace {

// |g'(delta|xi|)|^{1/2} as a spectral multiplier; zero where g' vanishes,
// error where it blows up on the populated modes.
GridFunction apply_sqrt_g1(const PhaseModel& model, const GridFunction& f,
                           double delta) {
    double bad_freq = -1.0;
    GridFunction out = apply_radial_multiplier(f, delta, [&](double y) {
        if (y == 0.0) {
            if (model.zero_regular()) {
                double g1 = model.derivative(1e-8, 1);
                return std::complex<double>(std::sqrt(std::fabs(g1)), 0.0);
            }
            return std::complex<double>(0.0, 0.0);  // flagged below
        }
        double g1 = model.derivative(y, 1);
        if (!std::isfinite(g1)) {
            bad_freq = y;
            return std::complex<double>(0.0, 0.0);
        }
        return std::complex<double>(std::sqrt(std::fabs(g1)), 0.0);
    });
    if (bad_freq >= 0.0)
        throw std::runtime_error(
            "smoothing weight singular at scaled frequency y = " +
            std::to_string(bad_freq));
    return out;
}

void check_extent(const PhaseModel& model, const GridFunction& f, double delta,
                  double t_max) {
    // group velocity sampled over the grid's frequency support
    double ymax = grid_max_scaled_freq(f, delta);
    double g1max = 0.0;
    for (int i = 1; i <= 64; ++i) {
        double y = ymax * i / 64.0;
        g1max = std::max(g1max, std::fabs(model.derivative(y, 1)));
    }
    if (f.extent <= g1max * std::fabs(t_max))
        throw std::invalid_argument(
            "grid extent " + std::to_string(f.extent) +
            " must exceed max|g'| * T = " + std::to_string(g1max * t_max) +
            " (energy would wrap around the periodic boundary)");
}

double weighted_energy(const GridFunction& u, const SmoothingSpec& spec) {
    double acc = 0.0;
    int N = u.resolution;
    if (u.n == 1) {
        for (int i = 0; i < N; ++i) {
            double x = u.coord(i) - spec.x0;
            acc += std::norm(u.samples[i]) * std::exp(-0.5 * spec.a * x * x);
        }
    } else {
        for (int i = 0; i < N; ++i) {
            double x = u.coord(i) - spec.x0;
            for (int j = 0; j < N; ++j) {
                double y = u.coord(j) - spec.x0y;
                acc += std::norm(u.samples[static_cast<size_t>(i) * N + j]) *
                       std::exp(-0.5 * spec.a * (x * x + y * y));
            }
        }
    }
    return acc * u.cell_volume();
}

}  // namespace

double kato_morawetz_integral(const PhaseModel& model, const GridFunction& f,
                              const SmoothingSpec& spec,
                              const TimeWindow& window, double delta,
                              const PropagateOptions& popts) {
    if (!(spec.a > 0.0))
        throw std::invalid_argument("smoothing: a > 0 required");
    check_extent(model, f, delta,
                 std::max(std::fabs(window.t0), std::fabs(window.t1)));
    GridFunction data = spec.apply_weight ? apply_sqrt_g1(model, f, delta) : f;
    int nt = std::max(window.steps, 2);
    std::vector<double> evals(nt);
    parallel_for(nt, [&](int i) {
        double t = window.t0 + (window.t1 - window.t0) * i / (nt - 1);
        GridFunction u = propagate_grid(model, data, t, delta, popts);
        evals[i] = weighted_energy(u, spec);
    });
    double dt = (window.t1 - window.t0) / (nt - 1);
    double acc = 0.0;
    for (int i = 0; i < nt; ++i)
        acc += ((i == 0 || i == nt - 1) ? 0.5 : 1.0) * evals[i];
    return acc * dt;
}

double sup_x_time_integral_1d(const PhaseModel& model, const GridFunction& f,
                              const TimeWindow& window, double delta,
                              bool apply_weight,
                              const PropagateOptions& popts) {
    if (f.n != 1)
        throw std::invalid_argument("sup_x_time_integral_1d: n = 1 only");
    check_extent(model, f, delta,
                 std::max(std::fabs(window.t0), std::fabs(window.t1)));
    GridFunction data = apply_weight ? apply_sqrt_g1(model, f, delta) : f;
    int nt = std::max(window.steps, 2);
    int N = f.resolution;
    std::vector<std::vector<double>> slices(nt);
    parallel_for(nt, [&](int i) {
        double t = window.t0 + (window.t1 - window.t0) * i / (nt - 1);
        GridFunction u = propagate_grid(model, data, t, delta, popts);
        std::vector<double> sq(N);
        for (int j = 0; j < N; ++j) sq[j] = std::norm(u.samples[j]);
        slices[i] = std::move(sq);
    });
    double dt = (window.t1 - window.t0) / (nt - 1);
    double best = 0.0;
    for (int j = 0; j < N; ++j) {
        double acc = 0.0;
        for (int i = 0; i < nt; ++i)
            acc += ((i == 0 || i == nt - 1) ? 0.5 : 1.0) * slices[i][j];
        best = std::max(best, acc * dt);
    }
    return best;
}

std::vector<std::pair<double, double>> local_energy_curve(
    const PhaseModel& model, const GridFunction& f, const SmoothingSpec& spec,
    const std::vector<double>& t_grid, double delta,
    const PropagateOptions& popts) {
    if (t_grid.empty()) throw std::invalid_argument("empty time grid");
    double t_max = 0.0;
    for (double t : t_grid) t_max = std::max(t_max, std::fabs(t));
    check_extent(model, f, delta, t_max);
    GridFunction data = spec.apply_weight ? apply_sqrt_g1(model, f, delta) : f;
    std::vector<std::pair<double, double>> curve(t_grid.size());
    parallel_for(static_cast<int>(t_grid.size()), [&](int i) {
        GridFunction u = propagate_grid(model, data, t_grid[i], delta, popts);
        curve[i] = {t_grid[i], weighted_energy(u, spec)};
    });
    return curve;
}

}  // namespace displab

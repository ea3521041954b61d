#include "displab/grid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "displab/fft.hpp"

namespace displab {

GridFunction GridFunction::zeros(int n, int resolution, double extent) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("GridFunction: n must be 1 or 2");
    if (!is_power_of_two(resolution))
        throw std::invalid_argument(
            "GridFunction: resolution must be a power of two");
    if (!(extent > 0.0))
        throw std::invalid_argument("GridFunction: extent must be positive");
    GridFunction g;
    g.n = n;
    g.resolution = resolution;
    g.extent = extent;
    g.samples.assign(n == 1 ? static_cast<size_t>(resolution)
                            : static_cast<size_t>(resolution) * resolution,
                     {0.0, 0.0});
    return g;
}

double GridFunction::norm_l2() const {
    double s = 0.0;
    for (const auto& v : samples) s += std::norm(v);
    return std::sqrt(s * cell_volume());
}

double GridFunction::norm_lr(double r) const {
    if (std::isinf(r)) {
        double m = 0.0;
        for (const auto& v : samples) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : samples) s += std::pow(std::abs(v), r);
    return std::pow(s * cell_volume(), 1.0 / r);
}

GridFunction grid_from_function(
    int n, int resolution, double extent,
    const std::function<std::complex<double>(double, double)>& f) {
    GridFunction g = GridFunction::zeros(n, resolution, extent);
    if (n == 1) {
        for (int i = 0; i < resolution; ++i)
            g.samples[i] = f(g.coord(i), 0.0);
    } else {
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j)
                g.samples[static_cast<size_t>(i) * resolution + j] =
                    f(g.coord(i), g.coord(j));
    }
    return g;
}

GridFunction gaussian_grid(int n, int resolution, double extent,
                           double width) {
    double w2 = 2.0 * width * width;
    return grid_from_function(n, resolution, extent,
                              [w2](double x, double y) {
                                  return std::complex<double>(
                                      std::exp(-(x * x + y * y) / w2), 0.0);
                              });
}

GridFunction random_band_limited(int n, int resolution, double extent,
                                 double band_lo, double band_hi, double delta,
                                 unsigned long long seed) {
    GridFunction g = GridFunction::zeros(n, resolution, extent);
    std::mt19937_64 rng(seed);
    auto unit_phase = [&rng]() {
        // 53-bit uniform in [0,1); portable across standard libraries
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double th = 2.0 * M_PI * u;
        return std::complex<double>(std::cos(th), std::sin(th));
    };
    if (n == 1) {
        for (int i = 0; i < resolution; ++i) {
            double y = delta * std::fabs(g.freq(i));
            if (y >= band_lo && y <= band_hi) g.samples[i] = unit_phase();
        }
        fft_1d(g.samples, true);
    } else {
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) {
                double y = delta * std::hypot(g.freq(i), g.freq(j));
                if (y >= band_lo && y <= band_hi)
                    g.samples[static_cast<size_t>(i) * resolution + j] =
                        unit_phase();
            }
        fft_2d(g.samples, resolution, true);
    }
    double nrm = g.norm_l2();
    if (nrm > 0.0)
        for (auto& v : g.samples) v /= nrm;
    return g;
}

GridFunction apply_radial_multiplier(
    const GridFunction& u, double delta,
    const std::function<std::complex<double>(double)>& mult) {
    GridFunction g = u;
    int N = g.resolution;
    double inv = 1.0 / static_cast<double>(g.samples.size());
    if (g.n == 1) {
        fft_1d(g.samples, false);
        for (int i = 0; i < N; ++i)
            g.samples[i] *= mult(delta * std::fabs(g.freq(i))) * inv;
        fft_1d(g.samples, true);
    } else {
        fft_2d(g.samples, N, false);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                g.samples[static_cast<size_t>(i) * N + j] *=
                    mult(delta * std::hypot(g.freq(i), g.freq(j))) * inv;
        fft_2d(g.samples, N, true);
    }
    return g;
}

double grid_max_scaled_freq(const GridFunction& u, double delta) {
    double corner = M_PI / u.extent * (u.resolution / 2);
    return u.n == 1 ? delta * corner : delta * corner * std::sqrt(2.0);
}

GridFunction propagate_grid(const PhaseModel& model, const GridFunction& u0,
                            double t, double delta,
                            const PropagateOptions& opts) {
    if (!(delta > 0.0))
        throw std::invalid_argument("propagate_grid: delta must be positive");
    if (opts.form == PropagatorForm::sign_split_1d && u0.n != 1)
        throw std::invalid_argument("sign_split form is 1d only");

    GridFunction g = u0;
    int N = g.resolution;
    double inv = 1.0 / static_cast<double>(g.samples.size());
    double sgn = opts.sign >= 0 ? 1.0 : -1.0;

    if (g.n == 1)
        fft_1d(g.samples, false);
    else
        fft_2d(g.samples, N, false);

    // xi = 0 mode: fine for phases extending C^1 to 0 (g(0+) = 0 for all
    // such built-ins), otherwise requires zero-mean data or projection.
    if (!model.zero_regular()) {
        double mean_mag = std::abs(g.samples[0]);
        double total = 0.0;
        for (const auto& v : g.samples) total = std::max(total, std::abs(v));
        if (mean_mag > 1e-13 * std::max(total, 1.0) &&
            !opts.zero_mean_projection)
            throw std::runtime_error(
                "propagate_grid: phase is singular at xi = 0 and the data has "
                "a nonzero mean mode; set zero_mean_projection to drop it");
        g.samples[0] = 0.0;
    }

    auto multiplier = [&](double axi, double xi_signed) {
        double phase;
        if (axi == 0.0) {
            phase = 0.0;  // zero-regular: g(0+) = 0
        } else if (opts.form == PropagatorForm::exp_ig) {
            phase = sgn * (t / delta) * model.eval(delta * axi);
        } else {
            // e^{t g(delta|D|)/(delta|D|) d/dx}: symbol phase
            // sign(xi) (t/delta) g(delta |xi|)
            double s = xi_signed >= 0.0 ? 1.0 : -1.0;
            phase = sgn * s * (t / delta) * model.eval(delta * axi);
        }
        return std::complex<double>(std::cos(phase), std::sin(phase));
    };

    if (g.n == 1) {
        for (int i = 0; i < N; ++i) {
            double xi = g.freq(i);
            if (xi == 0.0 && !model.zero_regular()) {
                g.samples[i] *= inv;
                continue;
            }
            g.samples[i] *= multiplier(std::fabs(xi), xi) * inv;
        }
        fft_1d(g.samples, true);
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double axi = std::hypot(g.freq(i), g.freq(j));
                size_t idx = static_cast<size_t>(i) * N + j;
                if (axi == 0.0 && !model.zero_regular()) {
                    g.samples[idx] *= inv;
                    continue;
                }
                g.samples[idx] *= multiplier(axi, 1.0) * inv;
            }
        fft_2d(g.samples, N, true);
    }
    return g;
}

}  // namespace displab

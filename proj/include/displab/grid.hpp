#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "displab/phase.hpp"

namespace displab {

/// Uniform periodic grid on [-L, L)^n, n = 1 or 2, complex samples in
/// row-major order. Resolution must be a power of two.
struct GridFunction {
    int n = 1;
    int resolution = 0;
    double extent = 0.0;  // half-width L
    std::vector<std::complex<double>> samples;

    static GridFunction zeros(int n, int resolution, double extent);

    double dx() const { return 2.0 * extent / resolution; }
    double cell_volume() const { return n == 1 ? dx() : dx() * dx(); }
    size_t size() const { return samples.size(); }

    /// Physical coordinate of a 1d index along one axis: -L + i dx.
    double coord(int i) const { return -extent + i * dx(); }
    /// Fourier mode of index i (standard FFT ordering).
    double freq(int i) const {
        int half = resolution / 2;
        int m = (i < half) ? i : i - resolution;
        return M_PI / extent * m;
    }

    double norm_l2() const;                  // cell-weighted L^2
    double norm_lr(double r) const;          // cell-weighted L^r, r=inf -> max
    std::complex<double> at(int i) const { return samples[i]; }
    std::complex<double> at(int i, int j) const {
        return samples[static_cast<size_t>(i) * resolution + j];
    }
};

/// Fill a grid from a function of the physical coordinate(s).
GridFunction grid_from_function(
    int n, int resolution, double extent,
    const std::function<std::complex<double>(double, double)>& f);

/// Centered Gaussian exp(-|x|^2 / (2 w^2)).
GridFunction gaussian_grid(int n, int resolution, double extent, double width);

/// Random band-limited field: unit-modulus spectrum on delta|xi| inside
/// [band_lo, band_hi], zero elsewhere; deterministic in the seed.
GridFunction random_band_limited(int n, int resolution, double extent,
                                 double band_lo, double band_hi, double delta,
                                 unsigned long long seed);

enum class PropagatorForm { exp_ig, sign_split_1d };

struct PropagateOptions {
    int sign = +1;                    // sign of the propagator exponent
    PropagatorForm form = PropagatorForm::exp_ig;
    bool zero_mean_projection = false;  // project out xi = 0 for singular g
};

/// Apply e^{sign * i (t/delta) g(delta |D|)} (or the 1d sign-split variant
/// e^{t g(delta|D|)/(delta|D|) d/dx}) by forward FFT, multiplier, inverse
/// FFT. Exactly unitary in the discrete l^2 norm. A phase that is singular
/// at 0 combined with a nonzero mean mode raises std::runtime_error unless
/// zero_mean_projection is set.
GridFunction propagate_grid(const PhaseModel& model, const GridFunction& u0,
                            double t, double delta,
                            const PropagateOptions& opts = {});

/// Apply a radial spectral multiplier m(delta |xi|) to the grid function.
GridFunction apply_radial_multiplier(
    const GridFunction& u, double delta,
    const std::function<std::complex<double>(double)>& mult);

/// Largest delta|xi| on the grid (corner frequency) -- band-limit checks.
double grid_max_scaled_freq(const GridFunction& u, double delta);

}  // namespace displab

#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

// Dense composite Simpson; for non-oscillatory reference values.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels = 4000) {
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline std::complex<double> simpson_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int panels = 4000) {
    double h = (b - a) / panels;
    std::complex<double> acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// tanh from the exponential Taylor series in long double; avoids std::tanh.
inline long double tanh_series(long double x) {
    long double term = 1.0L, e2x = 1.0L;
    long double arg = 2.0L * x;
    for (int n = 1; n <= 60; ++n) {
        term *= arg / n;
        e2x += term;
        if (term < 1e-25L * e2x) break;
    }
    return (e2x - 1.0L) / (e2x + 1.0L);
}

// Paper-normalized Bessel kernel by dense quadrature of the defining
// integral over [0, 2pi].
inline double j0_quadrature(double s, int panels = 20000) {
    auto f = [s](double th) { return std::cos(s * std::sin(th)); };
    return simpson(f, 0.0, 2.0 * M_PI, panels);
}

// Smallest positive zero of a scalar function by bisection on a bracket.
inline double bisect_zero(const std::function<double(double)>& f, double a,
                          double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if ((fa < 0) == (fm < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Multiplicity of a root by repeated synthetic deflation.
inline int multiplicity_by_deflation(std::vector<double> coeffs, double root) {
    int mult = 0;
    while (coeffs.size() > 1) {
        // p(root) relative to coefficient scale
        double scale = 0.0;
        for (double cc : coeffs) scale = std::max(scale, std::fabs(cc));
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            v = v * root + *it;
        if (std::fabs(v) > 1e-6 * std::max(scale, 1.0)) break;
        // deflate by (x - root)
        std::vector<double> q(coeffs.size() - 1);
        double carry = coeffs.back();
        for (int i = static_cast<int>(coeffs.size()) - 2; i >= 0; --i) {
            q[i] = carry;
            carry = coeffs[i] + carry * root;
        }
        coeffs = std::move(q);
        ++mult;
    }
    return mult;
}

// Free-Schrodinger evolution of exp(-x^2/(2 w^2)) under e^{i t D^2}.
inline std::complex<double> gaussian_schrodinger(double t, double x,
                                                 double w) {
    std::complex<double> denom(w * w, -2.0 * t);
    return w / std::sqrt(denom) * std::exp(-x * x / (2.0 * denom));
}

// 53-bit uniform in [0,1) from a raw 64-bit stream; keeps tests portable.
template <typename Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace oracles

#include "displab/bessel.hpp"

#include <cmath>

namespace displab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kQuarterPi = 0.78539816339744830961566084582;
constexpr double kSwitch = 12.0;

// Hankel coefficients c_m = prod_{j=1..m} (2j-1)^2 / (m! 8^m).
constexpr double c1 = 1.0 / 8.0;
constexpr double c2 = 9.0 / 128.0;
constexpr double c3 = 75.0 / 1024.0;
constexpr double c4 = 3675.0 / 32768.0;
constexpr double c5 = 59535.0 / 262144.0;
constexpr double c6 = 2401245.0 / 4194304.0;
constexpr double c7 = 57972915.0 / 33554432.0;
constexpr double c8 = 13043905875.0 / 2147483648.0;
constexpr double c9 = 418854310875.0 / 17179869184.0;

double j0_series(double x) {
    // sum (-1)^m (x/2)^{2m} / (m!)^2
    double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m <= 40; ++m) {
        term *= -q / (static_cast<double>(m) * m);
        sum += term;
        if (std::fabs(term) < 1e-18 * (1.0 + std::fabs(sum))) break;
    }
    return sum;
}

double j0_asymptotic(double x) {
    double ix = 1.0 / x;
    double ix2 = ix * ix;
    double P = 1.0 + ix2 * (-c2 + ix2 * (c4 + ix2 * (-c6 + ix2 * c8)));
    double Q = ix * (-c1 + ix2 * (c3 + ix2 * (-c5 + ix2 * (c7 - ix2 * c9))));
    double w = x - kQuarterPi;
    return std::sqrt(2.0 / (M_PI * x)) * (P * std::cos(w) - Q * std::sin(w));
}

}  // namespace

double bessel_j0(double s) {
    double x = std::fabs(s);
    double std_j0 = (x < kSwitch) ? j0_series(x) : j0_asymptotic(x);
    return kTwoPi * std_j0;
}

}  // namespace displab

#pragma once

namespace displab {

/// Bessel kernel in the normalization J0(s) = int_0^{2pi} e^{i s sin(theta)}
/// d(theta), i.e. 2*pi times the classical J_0. Real and even. Power series
/// below |s| = 12, Hankel asymptotic expansion beyond; absolute accuracy
/// a few 1e-9 near the switch point and better elsewhere.
double bessel_j0(double s);

}  // namespace displab

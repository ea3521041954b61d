#pragma once

#include <complex>
#include <vector>

namespace displab {

/// Unnormalized complex DFT, forward = exp(-i x xi) convention; FFTW under
/// the hood with cached plans. Deterministic (single-threaded, estimate-mode
/// planning). Sizes must be powers of two.
void fft_1d(std::vector<std::complex<double>>& data, bool inverse);

/// In-place 2d transform of an n-by-n row-major grid.
void fft_2d(std::vector<std::complex<double>>& data, int n, bool inverse);

bool is_power_of_two(int n);

}  // namespace displab

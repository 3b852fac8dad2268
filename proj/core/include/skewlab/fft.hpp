#pragma once

#include <complex>
#include <vector>

namespace skewlab {

/// In-place radix-2 DIT transform; n must be a power of two.
/// forward: X[m] = sum_j x[j] e^{-2 pi i m j / n}.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse = false);

/// Normalized Fourier coefficients c[m] = (1/n) sum_j x[j] e^{-2 pi i m j / n}.
std::vector<std::complex<double>> fourier_coefficients(
    const std::vector<std::complex<double>>& samples);

}  // namespace skewlab

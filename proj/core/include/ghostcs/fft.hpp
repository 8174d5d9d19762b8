#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "ghostcs/grid.hpp"

namespace ghostcs {

enum class FftDirection { Forward, Inverse };

/// Unnormalized in-place 2D DFT of a row-major rows x cols array
/// (forward kernel exp(-2 pi i k n / N)). Thread-safe.
void fft2_inplace(std::span<std::complex<double>> data, std::size_t rows,
                  std::size_t cols, FftDirection direction);

ComplexField fft2(const ComplexField& field);
/// Inverse transform including the 1/(rows*cols) factor.
ComplexField ifft2(const ComplexField& spectrum);

/// Signed DFT frequency of bin k on an n-point grid, in cycles per sample:
/// 0, 1/n, ..., with bins above n/2 aliased to negative frequencies.
double fft_frequency(std::size_t k, std::size_t n) noexcept;

/// Signed integer bin offset matching fft_frequency (k or k - n).
long fft_bin(std::size_t k, std::size_t n) noexcept;

}  // namespace ghostcs

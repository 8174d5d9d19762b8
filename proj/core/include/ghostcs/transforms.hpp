#pragma once

#include <cstddef>
#include <span>

#include "ghostcs/grid.hpp"

namespace ghostcs {

/// Orthonormal separable 2D DCT-II (rows, then columns). Scale factors are
/// sqrt(1/n) for k = 0 and sqrt(2/n) otherwise, so the transform is
/// orthogonal and its inverse is its transpose.
CoefficientPlane dct2_forward(const Image& image);
Image dct2_inverse(const CoefficientPlane& coefficients);

/// Allocation-free forms on row-major buffers of rows * cols values.
/// `in` and `out` must not alias.
void dct2_forward(std::span<const double> in, std::span<double> out, std::size_t rows,
                  std::size_t cols);
void dct2_inverse(std::span<const double> in, std::span<double> out, std::size_t rows,
                  std::size_t cols);

}  // namespace ghostcs

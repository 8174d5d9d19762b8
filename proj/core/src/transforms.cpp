#include "ghostcs/transforms.hpp"

#include <cmath>
#include <map>
#include <algorithm>
#include <numbers>
#include <vector>

namespace ghostcs {

namespace {

// Row k of the n-point orthonormal DCT-II matrix, stored row-major.
const std::vector<double>& dct_matrix(std::size_t n) {
  thread_local std::map<std::size_t, std::vector<double>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> m(n * n);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / dn);
    for (std::size_t j = 0; j < n; ++j) {
      m[k * n + j] = scale * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * dn));
    }
  }
  return cache.emplace(n, std::move(m)).first->second;
}

// out = op(M) applied along each row of a rows x cols buffer, where op is the
// identity (forward) or the transpose (inverse) of the cols-point matrix.
void along_rows(std::span<const double> in, std::span<double> out, std::size_t rows,
                std::size_t cols, bool transpose) {
  const auto& m = dct_matrix(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = in.data() + r * cols;
    double* y = out.data() + r * cols;
    if (!transpose) {
      for (std::size_t k = 0; k < cols; ++k) {
        const double* row = m.data() + k * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[k] = acc;
      }
    } else {
      for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
      for (std::size_t k = 0; k < cols; ++k) {
        const double* row = m.data() + k * cols;
        const double xk = x[k];
        for (std::size_t j = 0; j < cols; ++j) y[j] += row[j] * xk;
      }
    }
  }
}

// Same along columns: each output row is a combination of input rows.
void along_cols(std::span<const double> in, std::span<double> out, std::size_t rows,
                std::size_t cols, bool transpose) {
  const auto& m = dct_matrix(rows);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < rows; ++j) {
      // forward: out[k] += m[k][j] * in[j]; inverse: out[j] += m[k][j] * in[k]
      const double w = m[k * rows + j];
      const double* src = in.data() + (transpose ? k : j) * cols;
      double* dst = out.data() + (transpose ? j : k) * cols;
      for (std::size_t c = 0; c < cols; ++c) dst[c] += w * src[c];
    }
  }
}

void check_buffers(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::size_t cols) {
  if (rows == 0 || cols == 0 || in.size() != rows * cols || out.size() != rows * cols) {
    throw ParameterError("dct2: buffer size does not match grid shape");
  }
}

}  // namespace

void dct2_forward(std::span<const double> in, std::span<double> out, std::size_t rows,
                  std::size_t cols) {
  check_buffers(in, out, rows, cols);
  thread_local std::vector<double> scratch;
  scratch.resize(rows * cols);
  along_rows(in, scratch, rows, cols, false);
  along_cols(scratch, out, rows, cols, false);
}

void dct2_inverse(std::span<const double> in, std::span<double> out, std::size_t rows,
                  std::size_t cols) {
  check_buffers(in, out, rows, cols);
  thread_local std::vector<double> scratch;
  scratch.resize(rows * cols);
  along_cols(in, scratch, rows, cols, true);
  along_rows(scratch, out, rows, cols, true);
}

CoefficientPlane dct2_forward(const Image& image) {
  CoefficientPlane out(image.rows(), image.cols());
  dct2_forward(image.values(), out.values(), image.rows(), image.cols());
  return out;
}

Image dct2_inverse(const CoefficientPlane& coefficients) {
  Image out(coefficients.rows(), coefficients.cols());
  dct2_inverse(coefficients.values(), out.values(), coefficients.rows(),
               coefficients.cols());
  return out;
}

}  // namespace ghostcs

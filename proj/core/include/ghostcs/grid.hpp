#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ghostcs/errors.hpp"

namespace ghostcs {

/// Dense row-major 2D grid. The tag parameter keeps images, coefficient
/// planes and optical fields from being mixed up at call sites.
template <typename T, typename Tag>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), values_(checked_size(rows, cols), fill) {}
  Grid(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != checked_size(rows, cols)) {
      throw ParameterError("grid value count does not match " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }
  std::vector<T>& storage() noexcept { return values_; }
  const std::vector<T>& storage() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  template <typename U, typename OtherTag>
  bool same_shape(const Grid<U, OtherTag>& other) const noexcept {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw ParameterError("grid dimensions must be positive");
    return rows * cols;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

struct ImageTag {};
struct CoefficientTag {};
struct FieldTag {};

/// Real-valued image: transmission functions, intensity patterns, reconstructions.
using Image = Grid<double, ImageTag>;
/// Orthonormal 2D-DCT coefficients of an Image of the same shape.
using CoefficientPlane = Grid<double, CoefficientTag>;
/// Complex optical field amplitude.
using ComplexField = Grid<std::complex<double>, FieldTag>;

bool all_finite(std::span<const double> values) noexcept;
bool all_finite(std::span<const std::complex<double>> values) noexcept;

template <typename A, typename B>
void require_same_shape(const A& a, const B& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ParameterError(std::string(what) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

}  // namespace ghostcs

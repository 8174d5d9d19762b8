#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ghostcs/grid.hpp"
#include "ghostcs/measurement.hpp"

namespace ghostcs {

/// Real linear map R^cols -> R^rows with its adjoint.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t rows() const noexcept = 0;
  virtual std::size_t cols() const noexcept = 0;
  /// y = A x, with x.size() == cols() and y.size() == rows().
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  /// x = A^T y.
  virtual void apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_adjoint(std::span<const double> y) const;
};

/// Explicit row-major matrix; used for small problems and solver tests.
class DenseOperator final : public LinearOperator {
 public:
  DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> values);
  static DenseOperator identity(std::size_t n);

  std::size_t rows() const noexcept override { return rows_; }
  std::size_t cols() const noexcept override { return cols_; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;
  using LinearOperator::apply;
  using LinearOperator::apply_adjoint;

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Random-projection operator of a pattern stack: forward(x)_r = <I_r, x>,
/// adjoint(b) = sum_r b_r I_r. With centering, the mean pattern is
/// subtracted from every I_r. Holds a reference; the stack must outlive it.
class SensingOperator final : public LinearOperator {
 public:
  explicit SensingOperator(const PatternStack& patterns, bool center = false);

  std::size_t rows() const noexcept override { return patterns_->count(); }
  std::size_t cols() const noexcept override { return patterns_->pixels(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;
  using LinearOperator::apply;
  using LinearOperator::apply_adjoint;

  std::vector<double> forward(const Image& image) const;
  Image adjoint(std::span<const double> weights) const;

  bool centered() const noexcept { return !mean_pattern_.empty(); }

 private:
  const PatternStack* patterns_;
  std::vector<double> mean_pattern_;
};

/// Sensing in the DCT coefficient domain: theta -> A (idct2 theta).
class DctSensingOperator final : public LinearOperator {
 public:
  DctSensingOperator(const LinearOperator& image_operator, std::size_t grid_rows,
                     std::size_t grid_cols);

  std::size_t rows() const noexcept override { return inner_->rows(); }
  std::size_t cols() const noexcept override { return inner_->cols(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;
  using LinearOperator::apply;
  using LinearOperator::apply_adjoint;

 private:
  const LinearOperator* inner_;
  std::size_t grid_rows_;
  std::size_t grid_cols_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

}  // namespace ghostcs

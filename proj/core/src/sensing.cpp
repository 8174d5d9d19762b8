#include "ghostcs/sensing.hpp"

#include <cmath>

#include "ghostcs/parallel.hpp"
#include "ghostcs/transforms.hpp"

namespace ghostcs {

namespace {

void check_sizes(const LinearOperator& op, std::size_t in, std::size_t out, bool adjoint) {
  const std::size_t want_in = adjoint ? op.rows() : op.cols();
  const std::size_t want_out = adjoint ? op.cols() : op.rows();
  if (in != want_in || out != want_out) {
    throw ParameterError(adjoint ? "operator adjoint: dimension mismatch"
                                 : "operator apply: dimension mismatch");
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> LinearOperator::apply(std::span<const double> x) const {
  std::vector<double> y(rows());
  apply(x, y);
  return y;
}

std::vector<double> LinearOperator::apply_adjoint(std::span<const double> y) const {
  std::vector<double> x(cols());
  apply_adjoint(y, x);
  return x;
}

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0 || values_.size() != rows * cols) {
    throw ParameterError("DenseOperator: value count does not match shape");
  }
}

DenseOperator DenseOperator::identity(std::size_t n) {
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 1.0;
  return DenseOperator(n, n, std::move(values));
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_sizes(*this, x.size(), y.size(), false);
  for (std::size_t r = 0; r < rows_; ++r) {
    y[r] = dot(std::span(values_).subspan(r * cols_, cols_), x);
  }
}

void DenseOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_sizes(*this, y.size(), x.size(), true);
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = values_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) x[c] += row[c] * y[r];
  }
}

SensingOperator::SensingOperator(const PatternStack& patterns, bool center)
    : patterns_(&patterns) {
  if (patterns.empty()) throw ParameterError("SensingOperator: no patterns");
  if (center) {
    mean_pattern_.assign(patterns.pixels(), 0.0);
    for (std::size_t r = 0; r < patterns.count(); ++r) {
      const auto p = patterns.pattern(r);
      for (std::size_t i = 0; i < p.size(); ++i) mean_pattern_[i] += p[i];
    }
    const double inv = 1.0 / static_cast<double>(patterns.count());
    for (double& v : mean_pattern_) v *= inv;
  }
}

void SensingOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_sizes(*this, x.size(), y.size(), false);
  const double offset = centered() ? dot(mean_pattern_, x) : 0.0;
  parallel_for(rows(), 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) y[r] = dot(patterns_->pattern(r), x) - offset;
  });
}

void SensingOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_sizes(*this, y.size(), x.size(), true);
  const std::size_t count = rows();
  // Chunked over pixels so each output sums its patterns in a fixed order.
  parallel_for(cols(), 512, [&](std::size_t begin, std::size_t end) {
    std::fill(x.begin() + begin, x.begin() + end, 0.0);
    for (std::size_t r = 0; r < count; ++r) {
      const double w = y[r];
      const double* p = patterns_->pattern(r).data();
      for (std::size_t i = begin; i < end; ++i) x[i] += w * p[i];
    }
    if (centered()) {
      double total = 0.0;
      for (std::size_t r = 0; r < count; ++r) total += y[r];
      for (std::size_t i = begin; i < end; ++i) x[i] -= total * mean_pattern_[i];
    }
  });
}

std::vector<double> SensingOperator::forward(const Image& image) const {
  if (image.rows() != patterns_->rows() || image.cols() != patterns_->cols()) {
    throw ParameterError("SensingOperator::forward: image shape does not match patterns");
  }
  return LinearOperator::apply(image.values());
}

Image SensingOperator::adjoint(std::span<const double> weights) const {
  Image out(patterns_->rows(), patterns_->cols());
  apply_adjoint(weights, out.values());
  return out;
}

DctSensingOperator::DctSensingOperator(const LinearOperator& image_operator,
                                       std::size_t grid_rows, std::size_t grid_cols)
    : inner_(&image_operator), grid_rows_(grid_rows), grid_cols_(grid_cols) {
  if (grid_rows * grid_cols != image_operator.cols()) {
    throw ParameterError("DctSensingOperator: grid does not match operator width");
  }
}

void DctSensingOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_sizes(*this, x.size(), y.size(), false);
  thread_local std::vector<double> image;
  image.resize(x.size());
  dct2_inverse(x, image, grid_rows_, grid_cols_);
  inner_->apply(image, y);
}

void DctSensingOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_sizes(*this, y.size(), x.size(), true);
  thread_local std::vector<double> image;
  image.resize(x.size());
  inner_->apply_adjoint(y, image);
  dct2_forward(image, x, grid_rows_, grid_cols_);
}

}  // namespace ghostcs

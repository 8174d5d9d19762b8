#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "ghostcs/grid.hpp"
#include "ghostcs/measurement.hpp"

namespace testing_support {

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0,
                                         double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline ghostcs::Image random_image(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                   double lo = 0.0, double hi = 1.0) {
  return ghostcs::Image(rows, cols, random_vector(rows * cols, seed, lo, hi));
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double relative_l2(std::span<const double> a, std::span<const double> ref) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ref[i]) * (a[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

/// Ensemble of uniform random (not speckle) patterns measured against `object`.
inline ghostcs::MeasurementEnsemble random_ensemble(const ghostcs::Image& object,
                                                    std::size_t count, std::uint64_t seed) {
  ghostcs::MeasurementEnsemble e;
  e.patterns = ghostcs::PatternStack(object.rows(), object.cols(), count);
  const auto values = random_vector(object.size() * count, seed, 0.0, 2.0);
  std::copy(values.begin(), values.end(), e.patterns.values().begin());
  e.buckets = ghostcs::simulate_grayscale_buckets(e.patterns, object);
  return e;
}

}  // namespace testing_support

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghostcs/field_sim.hpp"
#include "ghostcs/grid.hpp"

namespace ghostcs {

/// Ordered list of equally-shaped intensity patterns, stored contiguously
/// (pattern r occupies values [r * pixels, (r + 1) * pixels)).
class PatternStack {
 public:
  PatternStack() = default;
  PatternStack(std::size_t rows, std::size_t cols, std::size_t count);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t pixels() const noexcept { return rows_ * cols_; }
  std::size_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  std::span<double> pattern(std::size_t r) {
    return std::span(values_).subspan(r * pixels(), pixels());
  }
  std::span<const double> pattern(std::size_t r) const {
    return std::span(values_).subspan(r * pixels(), pixels());
  }
  Image image(std::size_t r) const;
  std::vector<Image> images() const;

  void push_back(const Image& pattern);

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  friend bool operator==(const PatternStack&, const PatternStack&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t count_ = 0;
  std::vector<double> values_;
};

struct EnsembleProvenance {
  SpeckleParams speckle;
  std::uint64_t noise_seed = 0;
  std::string object;
};

/// M illumination patterns with the bucket value measured for each.
struct MeasurementEnsemble {
  PatternStack patterns;
  std::vector<double> buckets;
  double noise_sigma = 0.0;
  EnsembleProvenance provenance;

  std::size_t size() const noexcept { return buckets.size(); }
  /// Throws DataError/ParameterError when the invariants do not hold.
  void validate() const;
};

/// Discrete bucket signal: sum over pixels of pattern * object.
double bucket_measure(const Image& pattern, const Image& object);
double bucket_measure(std::span<const double> pattern, std::span<const double> object);

/// Speckle realizations 0 .. count-1, rounded to f32 precision (the
/// precision of the ensemble container).
PatternStack generate_patterns(const SpeckleParams& params, std::size_t count);

/// Buckets of an existing pattern list against a (grayscale) object.
std::vector<double> simulate_grayscale_buckets(const PatternStack& patterns,
                                               const Image& object);

/// Adds iid Gaussian noise with std noise_sigma * mean(|B|) to every bucket.
void add_relative_noise(std::vector<double>& buckets, double noise_sigma,
                        std::uint64_t noise_seed);

/// Generates M patterns, measures the object with each and applies the
/// optional relative bucket noise.
MeasurementEnsemble acquire(const Image& object, const SpeckleParams& params,
                            std::size_t count, double noise_sigma,
                            std::uint64_t noise_seed);

}  // namespace ghostcs

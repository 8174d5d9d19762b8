#include "ghostcs/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "ghostcs/parallel.hpp"
#include "ghostcs/rng.hpp"

namespace ghostcs {

PatternStack::PatternStack(std::size_t rows, std::size_t cols, std::size_t count)
    : rows_(rows), cols_(cols), count_(count), values_(rows * cols * count, 0.0) {
  if (rows == 0 || cols == 0) throw ParameterError("PatternStack: empty pattern shape");
}

Image PatternStack::image(std::size_t r) const {
  const auto src = pattern(r);
  return Image(rows_, cols_, std::vector<double>(src.begin(), src.end()));
}

std::vector<Image> PatternStack::images() const {
  std::vector<Image> out;
  out.reserve(count_);
  for (std::size_t r = 0; r < count_; ++r) out.push_back(image(r));
  return out;
}

void PatternStack::push_back(const Image& pattern) {
  if (count_ == 0 && rows_ == 0) {
    rows_ = pattern.rows();
    cols_ = pattern.cols();
  }
  if (pattern.rows() != rows_ || pattern.cols() != cols_) {
    throw ParameterError("PatternStack::push_back: pattern shape mismatch");
  }
  values_.insert(values_.end(), pattern.begin(), pattern.end());
  ++count_;
}

void MeasurementEnsemble::validate() const {
  if (buckets.empty()) throw ParameterError("ensemble must contain at least one measurement");
  if (patterns.count() != buckets.size()) {
    throw ParameterError("ensemble pattern and bucket counts differ");
  }
  if (!all_finite(buckets)) throw DataError("ensemble buckets contain non-finite values");
  if (!(noise_sigma >= 0.0)) throw DataError("ensemble noise_sigma must be >= 0");
}

double bucket_measure(std::span<const double> pattern, std::span<const double> object) {
  if (pattern.size() != object.size()) {
    throw ParameterError("bucket_measure: shape mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pattern.size(); ++i) sum += pattern[i] * object[i];
  return sum;
}

double bucket_measure(const Image& pattern, const Image& object) {
  require_same_shape(pattern, object, "bucket_measure");
  return bucket_measure(pattern.values(), object.values());
}

PatternStack generate_patterns(const SpeckleParams& params, std::size_t count) {
  params.validate();
  PatternStack stack(params.rows, params.cols, count);
  parallel_for(count, 8, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const Image pattern = speckle_pattern(params, r);
      // Held at f32 precision so an ensemble survives its container unchanged.
      std::transform(pattern.begin(), pattern.end(), stack.pattern(r).begin(),
                     [](double v) { return static_cast<double>(static_cast<float>(v)); });
    }
  });
  return stack;
}

std::vector<double> simulate_grayscale_buckets(const PatternStack& patterns,
                                               const Image& object) {
  if (patterns.rows() != object.rows() || patterns.cols() != object.cols()) {
    throw ParameterError("simulate_grayscale_buckets: object shape does not match patterns");
  }
  std::vector<double> buckets(patterns.count());
  parallel_for(patterns.count(), 32, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      buckets[r] = bucket_measure(patterns.pattern(r), object.values());
    }
  });
  return buckets;
}

void add_relative_noise(std::vector<double>& buckets, double noise_sigma,
                        std::uint64_t noise_seed) {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ParameterError("noise_sigma must be a finite value >= 0");
  }
  if (noise_sigma == 0.0 || buckets.empty()) return;
  double mean_abs = 0.0;
  for (double b : buckets) mean_abs += std::abs(b);
  mean_abs /= static_cast<double>(buckets.size());
  const double std_dev = noise_sigma * mean_abs;
  RandomStream stream(noise_seed, 0, StreamPurpose::BucketNoise);
  for (double& b : buckets) b += std_dev * stream.normal();
}

MeasurementEnsemble acquire(const Image& object, const SpeckleParams& params,
                            std::size_t count, double noise_sigma,
                            std::uint64_t noise_seed) {
  if (count < 1) throw ParameterError("acquire: need at least one measurement");
  if (!(noise_sigma >= 0.0)) throw ParameterError("acquire: noise_sigma must be >= 0");
  if (object.rows() != params.rows || object.cols() != params.cols) {
    throw ParameterError("acquire: object shape does not match speckle grid");
  }
  MeasurementEnsemble ensemble;
  ensemble.patterns = generate_patterns(params, count);
  ensemble.buckets = simulate_grayscale_buckets(ensemble.patterns, object);
  add_relative_noise(ensemble.buckets, noise_sigma, noise_seed);
  ensemble.noise_sigma = noise_sigma;
  ensemble.provenance.speckle = params;
  ensemble.provenance.noise_seed = noise_seed;
  return ensemble;
}

}  // namespace ghostcs

#include <gtest/gtest.h>

#include <chrono>

#include "ghostcs/errors.hpp"
#include "ghostcs/field_sim.hpp"
#include "ghostcs/measurement.hpp"
#include "ghostcs/phantoms.hpp"
#include "helpers.hpp"

using namespace ghostcs;

namespace {

SpeckleParams grid_params(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SpeckleParams p;
  p.rows = rows;
  p.cols = cols;
  p.seed = seed;
  p.aperture_diameter = spectral_aperture_for_fwhm(rows, cols, 1.53);
  return p;
}

}  // namespace

TEST(Bucket, HandExamples) {
  const Image pattern(2, 2, std::vector<double>{1, 2, 3, 4});
  EXPECT_EQ(bucket_measure(pattern, Image(2, 2, std::vector<double>{1, 0, 0, 1})), 5.0);
  EXPECT_EQ(bucket_measure(pattern, Image(2, 2, 0.0)), 0.0);
  EXPECT_THROW(bucket_measure(pattern, Image(2, 3, 0.0)), ParameterError);
}

TEST(Bucket, AllOnesObjectGivesPixelCount) {
  const Image speckle = speckle_pattern(grid_params(32, 32, 1), 0);
  EXPECT_NEAR(bucket_measure(speckle, Image(32, 32, 1.0)), 1024.0, 1e-9);
}

TEST(Acquire, NoiselessBucketsAreExact) {
  const Image object = double_slit({});
  const auto e = acquire(object, grid_params(64, 64, 4), 16, 0.0, 0);
  ASSERT_EQ(e.size(), 16u);
  for (std::size_t r = 0; r < e.size(); ++r) {
    EXPECT_EQ(e.buckets[r], bucket_measure(e.patterns.image(r), object));
  }
}

TEST(Acquire, Deterministic) {
  const Image object = double_slit({});
  const auto a = acquire(object, grid_params(64, 64, 4), 8, 0.05, 9);
  const auto b = acquire(object, grid_params(64, 64, 4), 8, 0.05, 9);
  EXPECT_EQ(a.patterns, b.patterns);
  EXPECT_EQ(a.buckets, b.buckets);
}

TEST(Acquire, NoiseTouchesBucketsOnly) {
  const Image object = double_slit({});
  const auto clean = acquire(object, grid_params(64, 64, 4), 32, 0.0, 0);
  const auto noisy = acquire(object, grid_params(64, 64, 4), 32, 0.01, 0);
  EXPECT_EQ(clean.patterns, noisy.patterns);
  EXPECT_NE(clean.buckets, noisy.buckets);
  double mean_abs = 0.0, sq = 0.0;
  for (std::size_t r = 0; r < 32; ++r) {
    mean_abs += std::abs(clean.buckets[r]);
    const double d = noisy.buckets[r] - clean.buckets[r];
    sq += d * d;
  }
  mean_abs /= 32.0;
  const double rms = std::sqrt(sq / 32.0);
  EXPECT_GT(rms, 0.003 * mean_abs);
  EXPECT_LT(rms, 0.03 * mean_abs);
}

TEST(Acquire, Rejections) {
  const Image object = double_slit({});
  EXPECT_THROW(acquire(object, grid_params(64, 64, 1), 0, 0.0, 0), ParameterError);
  EXPECT_THROW(acquire(object, grid_params(64, 64, 1), 4, -0.1, 0), ParameterError);
  EXPECT_THROW(acquire(object, grid_params(32, 64, 1), 4, 0.0, 0), ParameterError);
}

TEST(Acquire, BucketSpreadBand) {
  const auto e = acquire(double_slit({}), grid_params(64, 64, 1), 512, 0.0, 0);
  double mean = 0.0;
  for (double b : e.buckets) mean += b;
  mean /= 512.0;
  double var = 0.0;
  for (double b : e.buckets) var += (b - mean) * (b - mean);
  const double ratio = std::sqrt(var / 511.0) / mean;
  EXPECT_GE(ratio, 0.05);
  EXPECT_LE(ratio, 0.5);
}

TEST(Grayscale, UniformObjectMatchesAllOnes) {
  const PatternStack stack = generate_patterns(grid_params(20, 16, 2), 10);
  EXPECT_EQ(simulate_grayscale_buckets(stack, Image(20, 16, 1.0)),
            simulate_grayscale_buckets(stack, Image(20, 16, std::vector<double>(320, 1.0))));
  for (double b : simulate_grayscale_buckets(stack, Image(20, 16, 1.0))) EXPECT_NEAR(b, 320.0, 1e-3);
}

TEST(Grayscale, Linearity) {
  const PatternStack stack = generate_patterns(grid_params(20, 16, 2), 25);
  const Image t1 = testing_support::random_image(20, 16, 1);
  const Image t2 = testing_support::random_image(20, 16, 2);
  const double a = 0.7, b = -1.9;
  Image mix(20, 16);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * t1[i] + b * t2[i];
  const auto b1 = simulate_grayscale_buckets(stack, t1);
  const auto b2 = simulate_grayscale_buckets(stack, t2);
  const auto bm = simulate_grayscale_buckets(stack, mix);
  for (std::size_t r = 0; r < bm.size(); ++r) EXPECT_NEAR(bm[r], a * b1[r] + b * b2[r], 1e-10);
}

TEST(Grayscale, ScalingObjectScalesBuckets) {
  const PatternStack stack = generate_patterns(grid_params(20, 16, 2), 10);
  const Image t = testing_support::random_image(20, 16, 1);
  Image t3 = t;
  for (double& v : t3) v *= 3.0;
  const auto b = simulate_grayscale_buckets(stack, t);
  const auto b3 = simulate_grayscale_buckets(stack, t3);
  for (std::size_t r = 0; r < b.size(); ++r) EXPECT_NEAR(b3[r], 3.0 * b[r], 1e-10 * b3[r]);
}

TEST(Grayscale, EightHundredPatternsUnderOneSecond) {
  const PatternStack stack = generate_patterns(grid_params(76, 70, 1), 800);
  const Image object = testing_support::random_image(76, 70, 1);
  const auto start = std::chrono::steady_clock::now();
  const auto buckets = simulate_grayscale_buckets(stack, object);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(buckets.size(), 800u);
  EXPECT_LT(elapsed, 1.0);
}

TEST(Grayscale, ShapeMismatch) {
  const PatternStack stack = generate_patterns(grid_params(20, 16, 2), 2);
  EXPECT_THROW(simulate_grayscale_buckets(stack, Image(16, 20)), ParameterError);
}

TEST(Patterns, MatchSpeckleRealizations) {
  const auto p = grid_params(24, 24, 6);
  const PatternStack stack = generate_patterns(p, 6);
  for (std::size_t r = 0; r < 6; ++r) {
    const Image direct = speckle_pattern(p, r);
    EXPECT_LT(testing_support::max_abs_diff(stack.pattern(r), direct.values()), 1e-6);
  }
}

TEST(Ensemble, Validation) {
  MeasurementEnsemble e;
  EXPECT_THROW(e.validate(), ParameterError);
  e.patterns = PatternStack(2, 2, 1);
  e.buckets = {std::numeric_limits<double>::infinity()};
  EXPECT_THROW(e.validate(), DataError);
  e.buckets = {1.0, 2.0};
  EXPECT_THROW(e.validate(), ParameterError);
}

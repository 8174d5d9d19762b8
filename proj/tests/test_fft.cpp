#include <gtest/gtest.h>

#include "ghostcs/fft.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ghostcs;

namespace {

ComplexField random_field(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  const auto re = testing_support::random_vector(rows * cols, seed);
  const auto im = testing_support::random_vector(rows * cols, seed + 1000);
  ComplexField f(rows, cols);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = {re[i], im[i]};
  return f;
}

}  // namespace

TEST(Fft, MatchesDirectDft) {
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{4, 4}, {5, 7}, {8, 3}}) {
    const ComplexField x = random_field(r, c, r * 10 + c);
    const ComplexField y = fft2(x);
    const auto ref = oracle::naive_dft2(x.storage(), r, c);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_NEAR(std::abs(y[i] - ref[i]), 0.0, 1e-12) << r << "x" << c << " bin " << i;
    }
  }
}

TEST(Fft, InverseRoundTrip) {
  const ComplexField x = random_field(12, 10, 1);
  const ComplexField back = ifft2(fft2(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(std::abs(back[i] - x[i]), 0.0, 1e-14);
}

TEST(Fft, FrequencyGrid) {
  EXPECT_EQ(fft_bin(0, 8), 0);
  EXPECT_EQ(fft_bin(3, 8), 3);
  EXPECT_EQ(fft_bin(4, 8), -4);
  EXPECT_EQ(fft_bin(7, 8), -1);
  EXPECT_EQ(fft_bin(2, 5), 2);
  EXPECT_EQ(fft_bin(3, 5), -2);
  EXPECT_DOUBLE_EQ(fft_frequency(1, 8), 0.125);
  EXPECT_DOUBLE_EQ(fft_frequency(7, 8), -0.125);
}

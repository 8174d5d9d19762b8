#include <gtest/gtest.h>

#include <numbers>

#include "ghostcs/errors.hpp"
#include "ghostcs/field_sim.hpp"
#include "ghostcs/fft.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ghostcs;

namespace {

SpeckleParams spectral(std::size_t rows, std::size_t cols, double aperture, std::uint64_t seed = 1) {
  SpeckleParams p;
  p.mode = SpeckleMode::Spectral;
  p.rows = rows;
  p.cols = cols;
  p.aperture_diameter = aperture;
  p.seed = seed;
  return p;
}

double energy(const ComplexField& f) {
  double e = 0.0;
  for (const auto& v : f) e += std::norm(v);
  return e;
}

double contrast(const Image& img) {
  double mean = 0.0;
  for (double v : img) mean += v;
  mean /= static_cast<double>(img.size());
  double var = 0.0;
  for (double v : img) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(img.size())) / mean;
}

double mean_contrast(const SpeckleParams& p, std::size_t realizations) {
  double c = 0.0;
  for (std::size_t r = 0; r < realizations; ++r) c += contrast(speckle_pattern(p, r));
  return c / static_cast<double>(realizations);
}

ComplexField random_complex(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  const auto re = testing_support::random_vector(rows * cols, seed);
  const auto im = testing_support::random_vector(rows * cols, seed + 1);
  ComplexField f(rows, cols);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = {re[i], im[i]};
  return f;
}

}  // namespace

TEST(PhaseMask, SingleBlockIsGlobalPhase) {
  SpeckleParams p;
  p.mode = SpeckleMode::Fresnel;
  p.rows = p.cols = p.macropixel = 16;
  const ComplexField mask = random_phase_mask(p, 3);
  for (const auto& v : mask) {
    EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
    EXPECT_EQ(v, mask[0]);
  }
}

TEST(PhaseMask, Deterministic) {
  SpeckleParams p;
  p.mode = SpeckleMode::Fresnel;
  p.seed = 11;
  EXPECT_EQ(random_phase_mask(p, 5), random_phase_mask(p, 5));
  EXPECT_NE(random_phase_mask(p, 5), random_phase_mask(p, 6));
}

TEST(PhaseMask, BlockPhasesUniform) {
  SpeckleParams p;
  p.mode = SpeckleMode::Fresnel;
  p.rows = p.cols = 64;
  p.macropixel = 4;
  p.seed = 7;
  const ComplexField mask = random_phase_mask(p, 0);
  std::vector<double> phases;
  for (std::size_t by = 0; by < 64; by += 4) {
    for (std::size_t bx = 0; bx < 64; bx += 4) {
      const auto v = mask(by, bx);
      for (std::size_t y = 0; y < 4; ++y) {
        for (std::size_t x = 0; x < 4; ++x) ASSERT_EQ(mask(by + y, bx + x), v);
      }
      double phi = std::arg(v);
      if (phi < 0.0) phi += 2.0 * std::numbers::pi;
      phases.push_back(phi / (2.0 * std::numbers::pi));
    }
  }
  ASSERT_EQ(phases.size(), 256u);
  EXPECT_LT(oracle::ks_uniform(phases), oracle::ks_critical_1pct(phases.size()));
}

TEST(PhaseMask, PartialBlocksAtEdges) {
  SpeckleParams p;
  p.mode = SpeckleMode::Fresnel;
  p.rows = 10;
  p.cols = 7;
  p.macropixel = 4;
  const ComplexField mask = random_phase_mask(p, 0);
  EXPECT_EQ(mask(8, 6), mask(9, 4));
  EXPECT_EQ(mask.rows(), 10u);
}

TEST(SpeckleParams, Validation) {
  SpeckleParams f;
  f.mode = SpeckleMode::Fresnel;
  EXPECT_NO_THROW(f.validate());
  f.macropixel = 0;
  EXPECT_THROW(f.validate(), ParameterError);
  f.macropixel = 65;
  EXPECT_THROW(f.validate(), ParameterError);
  f.macropixel = 64;
  EXPECT_NO_THROW(f.validate());
  f.wavelength_px = 0.0;
  EXPECT_THROW(f.validate(), ParameterError);
  f.wavelength_px = 1.0;
  f.distance_px = -1.0;
  EXPECT_THROW(f.validate(), ParameterError);
  f.macropixel = 65;
  EXPECT_THROW(random_phase_mask(f, 0), ParameterError);

  SpeckleParams s;
  EXPECT_NO_THROW(s.validate());
  s.aperture_diameter = 64.5;
  EXPECT_THROW(s.validate(), ParameterError);
  s.aperture_diameter = 0.0;
  EXPECT_THROW(s.validate(), ParameterError);
  EXPECT_THROW(speckle_pattern(s, 0), ParameterError);
  s.aperture_diameter = 64.0;
  s.rows = 0;
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Fresnel, ZeroDistanceIsIdentity) {
  const ComplexField f = random_complex(16, 12, 1);
  const ComplexField g = fresnel_propagate(f, 1.0, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(std::abs(g[i] - f[i]), 0.0, 1e-12);
}

TEST(Fresnel, PlaneWaveKeepsMagnitude) {
  ComplexField f(16, 16, std::polar(0.7, 0.3));
  const ComplexField g = fresnel_propagate(f, 0.5, 300.0);
  for (const auto& v : g) EXPECT_NEAR(std::abs(v), 0.7, 1e-12);
}

TEST(Fresnel, EnergyPreserved) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ComplexField f = random_complex(32, 24, seed);
    const ComplexField g = fresnel_propagate(f, 1.0, 250.0 * static_cast<double>(seed));
    EXPECT_LT(std::abs(energy(g) - energy(f)) / energy(f), 1e-9);
  }
}

TEST(Fresnel, BackPropagationInverts) {
  const ComplexField f = random_complex(20, 30, 9);
  const ComplexField g = fresnel_propagate(fresnel_propagate(f, 0.8, 700.0), 0.8, -700.0);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(std::abs(g[i] - f[i]), 0.0, 1e-9);
}

TEST(Fresnel, MatchesTransferFunctionDefinition) {
  const std::size_t rows = 6;
  const std::size_t cols = 5;
  const double lambda = 1.3;
  const double z = 2.1;
  const ComplexField f = random_complex(rows, cols, 4);
  auto spectrum = oracle::naive_dft2(f.storage(), rows, cols);
  for (std::size_t u = 0; u < rows; ++u) {
    for (std::size_t v = 0; v < cols; ++v) {
      const double fy = (2 * u < rows ? double(u) : double(u) - double(rows)) / double(rows);
      const double fx = (2 * v < cols ? double(v) : double(v) - double(cols)) / double(cols);
      spectrum[u * cols + v] *= std::polar(1.0, -std::numbers::pi * lambda * z * (fx * fx + fy * fy));
    }
  }
  // Inverse DFT through the conjugate trick.
  for (auto& s : spectrum) s = std::conj(s);
  auto back = oracle::naive_dft2(spectrum, rows, cols);
  const ComplexField g = fresnel_propagate(f, lambda, z);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto expected = std::conj(back[i]) / static_cast<double>(rows * cols);
    EXPECT_NEAR(std::abs(g[i] - expected), 0.0, 1e-12);
  }
}

TEST(Fresnel, RejectsBadInput) {
  ComplexField f(4, 4, std::complex<double>{1.0, 0.0});
  EXPECT_THROW(fresnel_propagate(f, 0.0, 1.0), ParameterError);
  EXPECT_THROW(fresnel_propagate(f, 1.0, std::numeric_limits<double>::infinity()),
               ParameterError);
  f[3] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  EXPECT_THROW(fresnel_propagate(f, 1.0, 1.0), DataError);
}

TEST(Speckle, NonnegativeUnitMeanBothModes) {
  SpeckleParams fresnel;
  fresnel.mode = SpeckleMode::Fresnel;
  fresnel.rows = 40;
  fresnel.cols = 48;
  fresnel.macropixel = 2;
  for (const SpeckleParams& p : {spectral(40, 48, 30.0), fresnel}) {
    for (std::uint64_t r = 0; r < 5; ++r) {
      const Image img = speckle_pattern(p, r);
      double sum = 0.0;
      for (double v : img) {
        ASSERT_GE(v, 0.0);
        sum += v;
      }
      EXPECT_NEAR(sum / static_cast<double>(img.size()), 1.0, 1e-12);
    }
  }
}

TEST(Speckle, Deterministic) {
  const auto p = spectral(32, 32, 20.0, 99);
  EXPECT_EQ(speckle_pattern(p, 4), speckle_pattern(p, 4));
}

TEST(Speckle, SpectralContrastFullyDeveloped) {
  EXPECT_NEAR(mean_contrast(spectral(64, 64, 40.0), 100), 1.0, 0.05);
}

TEST(Speckle, FresnelContrastFullyDeveloped) {
  SpeckleParams p;
  p.mode = SpeckleMode::Fresnel;
  p.rows = p.cols = 64;
  p.macropixel = 4;
  p.wavelength_px = 1.0;
  p.distance_px = 1000.0;
  EXPECT_NEAR(mean_contrast(p, 100), 1.0, 0.05);
}

TEST(Speckle, FullApertureIsDeltaCorrelated) {
  const auto p = spectral(64, 64, 64.0);
  std::vector<Image> patterns;
  for (std::uint64_t r = 0; r < 100; ++r) patterns.push_back(speckle_pattern(p, r));
  const double fwhm = estimate_speckle_fwhm(patterns);
  EXPECT_GT(fwhm, 0.8);
  EXPECT_LT(fwhm, 1.3);
}

TEST(Speckle, DistinctRealizationsDecorrelated) {
  const auto p = spectral(64, 64, 40.0, 3);
  double total = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Image a = speckle_pattern(p, 2 * k);
    const Image b = speckle_pattern(p, 2 * k + 1);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ma += a[i];
      mb += b[i];
    }
    ma /= double(a.size());
    mb /= double(b.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    total += std::abs(sab / std::sqrt(saa * sbb));
  }
  EXPECT_LT(total / 100.0, 0.1);
}

TEST(Fwhm, WhiteNoise) {
  std::vector<Image> patterns;
  for (std::uint64_t s = 0; s < 20; ++s) {
    patterns.push_back(testing_support::random_image(64, 64, 500 + s));
  }
  const double fwhm = estimate_speckle_fwhm(patterns);
  EXPECT_GE(fwhm, 0.8);
  EXPECT_LE(fwhm, 1.3);
}

TEST(Fwhm, KnownGaussianCorrelation) {
  for (double sigma : {2.0, 3.0}) {
    std::mt19937_64 rng(17);
    std::vector<Image> patterns;
    for (int k = 0; k < 40; ++k) {
      patterns.emplace_back(64, 64, oracle::gaussian_correlated_field(64, 64, sigma, rng));
    }
    const double expected = 2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma;
    EXPECT_NEAR(estimate_speckle_fwhm(patterns), expected, 0.05 * expected) << "sigma " << sigma;
  }
}

TEST(Fwhm, AgreesWithBruteForceAutocovariance) {
  const auto p = spectral(24, 20, 12.0, 5);
  const Image img = speckle_pattern(p, 0);
  const auto acov = oracle::circular_autocovariance(img.storage(), img.rows(), img.cols());
  ComplexField field(img.rows(), img.cols());
  for (std::size_t i = 0; i < acov.size(); ++i) field[i] = acov[i];
  const std::vector<Image> one{img};
  EXPECT_NEAR(estimate_speckle_fwhm(one), autocovariance_fwhm(field), 1e-9);
}

TEST(Fwhm, Errors) {
  EXPECT_THROW(estimate_speckle_fwhm(std::vector<Image>{}), ParameterError);
  EXPECT_THROW(estimate_speckle_fwhm(std::vector<Image>{Image(8, 8, 1.0)}), DegenerateInputError);
  EXPECT_THROW(estimate_speckle_fwhm(std::vector<Image>{Image(8, 8, 1.0), Image(8, 9, 1.0)}),
               ParameterError);
}

TEST(Fwhm, TunedApertureGivesPaperCellCount) {
  const double aperture = spectral_aperture_for_fwhm(64, 64, 1.53);
  EXPECT_NEAR(expected_spectral_fwhm(64, 64, aperture), 1.53, 0.02);
  const auto p = spectral(64, 64, aperture, 2);
  std::vector<Image> patterns;
  for (std::uint64_t r = 0; r < 100; ++r) patterns.push_back(speckle_pattern(p, r));
  const double fwhm = estimate_speckle_fwhm(patterns);
  EXPECT_NEAR(fwhm, 1.53, 0.1);
  EXPECT_NEAR(static_cast<double>(resolution_cells(4096, fwhm)), 1750.0, 0.015 * 1750.0);
}

TEST(Fwhm, SmallerApertureGivesLargerGrain) {
  EXPECT_GT(expected_spectral_fwhm(64, 64, 20.0), expected_spectral_fwhm(64, 64, 40.0));
}

TEST(ResolutionCells, Examples) {
  EXPECT_NEAR(resolution_cells(4096, 1.53), 1750, 1);
  EXPECT_NEAR(resolution_cells(5320, 2.01), 1317, 1);
  EXPECT_NEAR(static_cast<double>(resolution_cells(5320, 2.01)), 1330.0, 0.015 * 1330.0);
  EXPECT_EQ(resolution_cells(100, 1.0), 100);
}

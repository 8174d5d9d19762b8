#include "ghostcs/field_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ghostcs/fft.hpp"
#include "ghostcs/rng.hpp"

namespace ghostcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Image intensity_unit_mean(const ComplexField& field) {
  Image out(field.rows(), field.cols());
  double total = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    out[i] = std::norm(field[i]);
    total += out[i];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateInputError("speckle field has zero or non-finite total intensity");
  }
  const double scale = static_cast<double>(out.size()) / total;
  for (auto& v : out) v *= scale;
  return out;
}

ComplexField spectral_field(const SpeckleParams& params, std::uint64_t realization) {
  RandomStream stream(params.seed, realization, StreamPurpose::SpectralPhase);
  ComplexField spectrum(params.rows, params.cols);
  const double radius = 0.5 * params.aperture_diameter;
  const double radius_sq = radius * radius;
  for (std::size_t r = 0; r < params.rows; ++r) {
    const double fy = static_cast<double>(fft_bin(r, params.rows));
    for (std::size_t c = 0; c < params.cols; ++c) {
      const double fx = static_cast<double>(fft_bin(c, params.cols));
      if (fy * fy + fx * fx <= radius_sq) {
        spectrum(r, c) = std::polar(1.0, kTwoPi * stream.uniform());
      }
    }
  }
  fft2_inplace(spectrum.values(), spectrum.rows(), spectrum.cols(), FftDirection::Inverse);
  return spectrum;
}

}  // namespace

void SpeckleParams::validate() const {
  if (rows == 0 || cols == 0) throw ParameterError("speckle grid must be non-empty");
  const std::size_t min_side = std::min(rows, cols);
  switch (mode) {
    case SpeckleMode::Fresnel:
      if (macropixel < 1 || macropixel > min_side) {
        throw ParameterError("macropixel must lie in [1, min(rows, cols)] = [1, " +
                             std::to_string(min_side) + "]");
      }
      if (!(wavelength_px > 0.0) || !std::isfinite(wavelength_px)) {
        throw ParameterError("wavelength_px must be positive");
      }
      if (!(distance_px >= 0.0) || !std::isfinite(distance_px)) {
        throw ParameterError("distance_px must be non-negative");
      }
      break;
    case SpeckleMode::Spectral:
      if (!(aperture_diameter > 0.0) ||
          aperture_diameter > static_cast<double>(min_side)) {
        throw ParameterError("aperture_diameter must lie in (0, min(rows, cols)]");
      }
      break;
  }
}

ComplexField random_phase_mask(const SpeckleParams& params, std::uint64_t realization) {
  if (params.rows == 0 || params.cols == 0 || params.macropixel < 1 ||
      params.macropixel > std::min(params.rows, params.cols)) {
    throw ParameterError("random_phase_mask: macropixel out of range");
  }
  RandomStream stream(params.seed, realization, StreamPurpose::PhaseMask);
  const std::size_t block = params.macropixel;
  const std::size_t block_rows = (params.rows + block - 1) / block;
  const std::size_t block_cols = (params.cols + block - 1) / block;
  std::vector<std::complex<double>> cells(block_rows * block_cols);
  for (auto& cell : cells) cell = std::polar(1.0, kTwoPi * stream.uniform());

  ComplexField mask(params.rows, params.cols);
  for (std::size_t r = 0; r < params.rows; ++r) {
    for (std::size_t c = 0; c < params.cols; ++c) {
      mask(r, c) = cells[(r / block) * block_cols + c / block];
    }
  }
  return mask;
}

ComplexField fresnel_propagate(const ComplexField& field, double wavelength_px,
                               double distance_px) {
  if (!(wavelength_px > 0.0) || !std::isfinite(wavelength_px)) {
    throw ParameterError("fresnel_propagate: wavelength must be positive");
  }
  if (!std::isfinite(distance_px)) {
    throw ParameterError("fresnel_propagate: distance must be finite");
  }
  if (!all_finite(field.values())) {
    throw DataError("fresnel_propagate: field contains non-finite values");
  }
  ComplexField spectrum = fft2(field);
  const double chirp = std::numbers::pi * wavelength_px * distance_px;
  for (std::size_t r = 0; r < spectrum.rows(); ++r) {
    const double fy = fft_frequency(r, spectrum.rows());
    for (std::size_t c = 0; c < spectrum.cols(); ++c) {
      const double fx = fft_frequency(c, spectrum.cols());
      spectrum(r, c) *= std::polar(1.0, -chirp * (fx * fx + fy * fy));
    }
  }
  return ifft2(spectrum);
}

Image speckle_pattern(const SpeckleParams& params, std::uint64_t realization) {
  params.validate();
  if (params.mode == SpeckleMode::Fresnel) {
    return intensity_unit_mean(fresnel_propagate(random_phase_mask(params, realization),
                                                 params.wavelength_px, params.distance_px));
  }
  return intensity_unit_mean(spectral_field(params, realization));
}

double estimate_speckle_fwhm(std::span<const Image> patterns) {
  if (patterns.empty()) throw ParameterError("estimate_speckle_fwhm: no patterns");
  const std::size_t rows = patterns.front().rows();
  const std::size_t cols = patterns.front().cols();

  ComplexField power(rows, cols);
  ComplexField work(rows, cols);
  for (const Image& pattern : patterns) {
    require_same_shape(pattern, patterns.front(), "estimate_speckle_fwhm");
    double mean = 0.0;
    for (double v : pattern) mean += v;
    mean /= static_cast<double>(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) work[i] = pattern[i] - mean;
    fft2_inplace(work.values(), rows, cols, FftDirection::Forward);
    for (std::size_t i = 0; i < work.size(); ++i) power[i] += std::norm(work[i]);
  }
  fft2_inplace(power.values(), rows, cols, FftDirection::Inverse);
  return autocovariance_fwhm(power);
}

double autocovariance_fwhm(const ComplexField& autocovariance) {
  const std::size_t rows = autocovariance.rows();
  const std::size_t cols = autocovariance.cols();
  const double peak = autocovariance[0].real();
  if (!(peak > 1e-300)) {
    throw DegenerateInputError("speckle FWHM: patterns have zero variance");
  }
  // Average of the four axis cuts through the (circular) autocovariance.
  const std::size_t max_lag = std::min(rows, cols) / 2;
  auto profile = [&](std::size_t lag) {
    const double sum = autocovariance(0, lag % cols).real() +
                       autocovariance(0, (cols - lag) % cols).real() +
                       autocovariance(lag % rows, 0).real() +
                       autocovariance((rows - lag) % rows, 0).real();
    return 0.25 * sum / peak;
  };
  double previous = 1.0;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    const double current = profile(lag);
    if (current <= 0.5) {
      const double half_width =
          static_cast<double>(lag - 1) + (previous - 0.5) / (previous - current);
      return 2.0 * half_width;
    }
    previous = current;
  }
  throw DegenerateInputError("speckle FWHM: autocovariance never falls to half maximum");
}

long resolution_cells(long n_pix, double fwhm) {
  if (n_pix <= 0) throw ParameterError("resolution_cells: n_pix must be positive");
  if (!(fwhm > 0.0) || !std::isfinite(fwhm)) {
    throw ParameterError("resolution_cells: fwhm must be positive");
  }
  return std::lround(static_cast<double>(n_pix) / (fwhm * fwhm));
}

double expected_spectral_fwhm(std::size_t rows, std::size_t cols, double aperture_diameter) {
  SpeckleParams params;
  params.rows = rows;
  params.cols = cols;
  params.aperture_diameter = aperture_diameter;
  params.validate();
  // For random pupil phases the intensity autocovariance is |F^-1 pupil|^2.
  const double radius_sq = 0.25 * aperture_diameter * aperture_diameter;
  ComplexField field(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const double fy = static_cast<double>(fft_bin(r, rows));
    for (std::size_t c = 0; c < cols; ++c) {
      const double fx = static_cast<double>(fft_bin(c, cols));
      if (fy * fy + fx * fx <= radius_sq) field(r, c) = 1.0;
    }
  }
  fft2_inplace(field.values(), rows, cols, FftDirection::Inverse);
  for (auto& v : field) v = std::norm(v);
  return autocovariance_fwhm(field);
}

double spectral_aperture_for_fwhm(std::size_t rows, std::size_t cols, double fwhm) {
  if (rows == 0 || cols == 0) throw ParameterError("spectral_aperture_for_fwhm: empty grid");
  if (!(fwhm > 0.0)) throw ParameterError("spectral_aperture_for_fwhm: fwhm must be positive");
  // The pupil only changes when D/2 crosses a lattice radius sqrt(ky^2 + kx^2),
  // so candidates are midpoints between consecutive radii (plus the full side).
  const long half_rows = static_cast<long>(rows) / 2;
  const long half_cols = static_cast<long>(cols) / 2;
  const double max_diameter = static_cast<double>(std::min(rows, cols));
  std::vector<long> radii_sq;
  for (long ky = 0; ky <= half_rows; ++ky) {
    for (long kx = 0; kx <= half_cols; ++kx) radii_sq.push_back(ky * ky + kx * kx);
  }
  std::sort(radii_sq.begin(), radii_sq.end());
  radii_sq.erase(std::unique(radii_sq.begin(), radii_sq.end()), radii_sq.end());

  double best_diameter = max_diameter;
  double best_error = std::abs(expected_spectral_fwhm(rows, cols, max_diameter) - fwhm);
  for (std::size_t i = 0; i + 1 < radii_sq.size(); ++i) {
    const double diameter = std::sqrt(static_cast<double>(radii_sq[i])) +
                            std::sqrt(static_cast<double>(radii_sq[i + 1]));
    if (diameter > max_diameter) break;
    double error = 0.0;
    try {
      error = std::abs(expected_spectral_fwhm(rows, cols, diameter) - fwhm);
    } catch (const DegenerateInputError&) {
      continue;  // pupil too small for a half-maximum crossing on this grid
    }
    if (error < best_error) {
      best_error = error;
      best_diameter = diameter;
    }
  }
  return best_diameter;
}

}  // namespace ghostcs

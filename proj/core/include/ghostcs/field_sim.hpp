#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ghostcs/grid.hpp"

namespace ghostcs {

enum class SpeckleMode { Fresnel, Spectral };

/// Generation parameters for pseudothermal speckle. Lengths are in
/// pixel-normalized units so that wavelength_px * distance_px is in px^2.
struct SpeckleParams {
  SpeckleMode mode = SpeckleMode::Spectral;
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::uint64_t seed = 0;

  // Fresnel mode: random SLM phase cells propagated to the object plane.
  std::size_t macropixel = 4;
  double wavelength_px = 1.0;
  double distance_px = 1000.0;

  // Spectral mode: diameter of the illuminated pupil on the frequency grid.
  double aperture_diameter = 43.0;

  /// Throws ParameterError when any field is out of range.
  void validate() const;
};

/// Unit-magnitude SLM field exp(i phi) with phi constant on
/// macropixel x macropixel blocks, each uniform on [0, 2 pi).
ComplexField random_phase_mask(const SpeckleParams& params, std::uint64_t realization);

/// Angular-spectrum Fresnel propagation with transfer function
/// exp(-i pi lambda z (fx^2 + fy^2)) on the DFT frequency grid. Unitary, so
/// energy is preserved and propagation by -z undoes +z.
ComplexField fresnel_propagate(const ComplexField& field, double wavelength_px,
                               double distance_px);

/// One speckle intensity realization, nonnegative and normalized to unit mean.
Image speckle_pattern(const SpeckleParams& params, std::uint64_t realization);

/// Ensemble-averaged autocovariance FWHM in pixels. The normalized
/// autocovariance is profiled along the lattice axes (both signs, both axes,
/// averaged) and the half-maximum crossing is found by linear interpolation.
double estimate_speckle_fwhm(std::span<const Image> patterns);

/// Number of speckle resolution cells: round(n_pix / fwhm^2).
long resolution_cells(long n_pix, double fwhm);

/// FWHM of a circular autocovariance array, measured as in
/// estimate_speckle_fwhm. The zero-lag element must be positive.
double autocovariance_fwhm(const ComplexField& autocovariance);

/// Ensemble-limit FWHM of spectral-mode speckle for a given pupil, from the
/// exact expected autocovariance |F^-1 pupil|^2.
double expected_spectral_fwhm(std::size_t rows, std::size_t cols, double aperture_diameter);

/// Spectral-mode aperture diameter whose expected FWHM is closest to the
/// requested one.
double spectral_aperture_for_fwhm(std::size_t rows, std::size_t cols, double fwhm);

}  // namespace ghostcs

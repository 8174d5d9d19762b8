#pragma once

#include <cstddef>

#include "ghostcs/grid.hpp"

namespace ghostcs {

/// Signal (bright) and background (dark) regions for SNR, as {0, 1} masks.
struct RegionMasks {
  Image bright;
  Image dark;

  std::size_t bright_count() const noexcept;
  std::size_t dark_count() const noexcept;
  /// Throws ParameterError unless binary, disjoint and >= 2 pixels each.
  void validate() const;
};

/// (mean over bright - mean over dark) / sample std over dark.
/// Throws DegenerateInputError when the dark region has zero spread.
double snr(const Image& image, const RegionMasks& masks);

/// Mean squared difference between normalize_affine(recon) and reference.
double mse(const Image& recon, const Image& reference);

/// Min-max map onto [0, 1]; a constant image maps to all 0.5.
Image normalize_affine(const Image& image);

/// Bright = 1-pixels of a binary reference, dark = 0-pixels, each eroded
/// erode_px times with the 4-neighborhood. Pixels outside the grid count as
/// members of the region being eroded. Throws ParameterError if a mask empties.
RegionMasks auto_masks(const Image& reference, std::size_t erode_px);

/// One 4-neighbor erosion step of a binary mask.
Image erode4(const Image& mask);

}  // namespace ghostcs

#pragma once

#include <cstddef>
#include <filesystem>

#include "ghostcs/grid.hpp"

namespace ghostcs {

enum class SlitOrientation { Vertical, Horizontal };

/// Two identical rectangular slits, centered on the grid. The defaults are
/// the 64x64 test plate used throughout (width:separation close to 220:500).
struct DoubleSlitSpec {
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::size_t slit_width = 6;
  std::size_t separation = 14;  ///< center-to-center, pixels
  std::size_t slit_height = 40;
  SlitOrientation orientation = SlitOrientation::Vertical;
};

/// Binary transmission plate with value 1 inside both slits. The pair is
/// exactly mirror-symmetric about the grid axis perpendicular to the
/// separation, which requires (side - separation - slit_width) to be even.
Image double_slit(const DoubleSlitSpec& spec);

/// Wraps a {0, 1} mask as a transmission image; throws DataError otherwise.
Image glyph_phantom(std::size_t rows, std::size_t cols, const Image& mask);

/// Loads a P2/P5 grayscale file with values mapped linearly onto [0, 1].
Image load_grayscale(const std::filesystem::path& path);

/// Loads a binary glyph mask file (any maxval; levels must be 0 or maxval).
Image load_glyph(const std::filesystem::path& path);

/// True when every value is exactly 0 or 1.
bool is_binary(const Image& image) noexcept;

}  // namespace ghostcs

#include "ghostcs/phantoms.hpp"

#include <algorithm>
#include <string>

#include "ghostcs/pgm.hpp"

namespace ghostcs {

Image double_slit(const DoubleSlitSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw ParameterError("double_slit: empty grid");
  if (spec.slit_width < 1 || spec.slit_height < 1) {
    throw ParameterError("double_slit: slit width and height must be >= 1");
  }
  if (spec.separation <= spec.slit_width) {
    throw ParameterError("double_slit: separation must exceed slit width");
  }
  const bool vertical = spec.orientation == SlitOrientation::Vertical;
  // "across" runs along the separation, "along" along the slit height.
  const std::size_t across = vertical ? spec.cols : spec.rows;
  const std::size_t along = vertical ? spec.rows : spec.cols;
  const std::size_t span = spec.separation + spec.slit_width;
  if (span > across || spec.slit_height > along) {
    throw ParameterError("double_slit: slits do not fit inside the " +
                         std::to_string(spec.rows) + "x" + std::to_string(spec.cols) +
                         " grid");
  }
  if ((across - span) % 2 != 0) {
    throw ParameterError(
        "double_slit: separation + slit_width must have the parity of the grid side "
        "for an exactly centered pair");
  }
  const std::size_t first = (across - span) / 2;
  const std::size_t second = first + spec.separation;
  const std::size_t top = (along - spec.slit_height) / 2;

  Image plate(spec.rows, spec.cols, 0.0);
  for (std::size_t a = top; a < top + spec.slit_height; ++a) {
    for (std::size_t w = 0; w < spec.slit_width; ++w) {
      for (std::size_t start : {first, second}) {
        if (vertical) {
          plate(a, start + w) = 1.0;
        } else {
          plate(start + w, a) = 1.0;
        }
      }
    }
  }
  return plate;
}

bool is_binary(const Image& image) noexcept {
  return std::all_of(image.begin(), image.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

Image glyph_phantom(std::size_t rows, std::size_t cols, const Image& mask) {
  if (mask.rows() != rows || mask.cols() != cols) {
    throw ParameterError("glyph_phantom: mask shape does not match requested grid");
  }
  if (!is_binary(mask)) throw DataError("glyph_phantom: mask must contain only 0 and 1");
  return mask;
}

Image load_grayscale(const std::filesystem::path& path) {
  return to_image(read_pgm(path));
}

Image load_glyph(const std::filesystem::path& path) {
  Image mask = load_grayscale(path);
  return glyph_phantom(mask.rows(), mask.cols(), mask);
}

}  // namespace ghostcs

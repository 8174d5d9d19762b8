#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ghostcs/grid.hpp"

namespace ghostcs {

enum class PgmEncoding { Ascii, Binary };  // P2, P5

/// Raw PGM raster: integer gray levels in [0, maxval].
struct PgmData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  unsigned maxval = 0;
  std::vector<std::uint16_t> levels;
};

/// Parses P2 or P5 content. Throws FormatError for malformed content and
/// UnsupportedFormatError for other magic numbers or maxval outside [1, 65535].
PgmData parse_pgm(std::string_view bytes);
PgmData read_pgm(const std::filesystem::path& path);

std::string encode_pgm(const PgmData& data, PgmEncoding encoding);
void write_pgm(const std::filesystem::path& path, const PgmData& data,
               PgmEncoding encoding);

/// Quantizes an image with values in [0, 1] (clamped) to maxval levels.
PgmData quantize(const Image& image, unsigned maxval);
/// Maps gray levels linearly onto [0, 1].
Image to_image(const PgmData& data);

/// Writes an image with values in [0, 1]. Defaults match the tool's
/// normalized output: binary P5, 16-bit.
void save_pgm(const std::filesystem::path& path, const Image& image,
              PgmEncoding encoding = PgmEncoding::Binary, unsigned maxval = 65535);

std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace ghostcs

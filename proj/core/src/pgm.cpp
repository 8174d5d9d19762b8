#include "ghostcs/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ghostcs {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFul) throw FormatError(std::string("PGM ") + what + " too large");
      ++pos_;
    }
    if (pos_ == start) throw FormatError(std::string("PGM: expected ") + what);
    return value;
  }

  std::size_t position() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }
  bool at_end() const noexcept { return pos_ >= bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

PgmData parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw FormatError("PGM: missing magic number");
  const char variant = bytes[1];
  if (variant != '2' && variant != '5') {
    throw UnsupportedFormatError(std::string("PGM: unsupported magic P") + variant +
                                 " (only P2 and P5 are read)");
  }
  HeaderReader reader(bytes);
  reader.advance(2);
  PgmData data;
  data.cols = reader.number("width");
  data.rows = reader.number("height");
  const unsigned long maxval = reader.number("maxval");
  if (data.rows == 0 || data.cols == 0) throw FormatError("PGM: zero image dimension");
  if (maxval == 0 || maxval > 65535) {
    throw UnsupportedFormatError("PGM: unsupported maxval " + std::to_string(maxval));
  }
  data.maxval = static_cast<unsigned>(maxval);
  const std::size_t count = data.rows * data.cols;
  data.levels.resize(count);

  if (variant == '2') {
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned long level = reader.number("pixel value");
      if (level > maxval) throw FormatError("PGM: pixel value exceeds maxval");
      data.levels[i] = static_cast<std::uint16_t>(level);
    }
    return data;
  }

  // P5: exactly one whitespace byte separates the header from the raster.
  if (reader.at_end() ||
      !std::isspace(static_cast<unsigned char>(bytes[reader.position()]))) {
    throw FormatError("PGM: missing whitespace after maxval");
  }
  reader.advance(1);
  const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
  const std::size_t offset = reader.position();
  if (bytes.size() < offset + count * bytes_per_sample) {
    throw FormatError("PGM: truncated raster");
  }
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + offset);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned level = bytes_per_sample == 1
                               ? raster[i]
                               : (unsigned{raster[2 * i]} << 8) | raster[2 * i + 1];
    if (level > maxval) throw FormatError("PGM: pixel value exceeds maxval");
    data.levels[i] = static_cast<std::uint16_t>(level);
  }
  return data;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return std::move(buffer).str();
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

PgmData read_pgm(const std::filesystem::path& path) {
  return parse_pgm(read_file_bytes(path));
}

std::string encode_pgm(const PgmData& data, PgmEncoding encoding) {
  if (data.maxval == 0 || data.maxval > 65535 || data.levels.size() != data.rows * data.cols) {
    throw ParameterError("encode_pgm: inconsistent raster");
  }
  std::string out = (encoding == PgmEncoding::Ascii ? "P2\n" : "P5\n") +
                    std::to_string(data.cols) + " " + std::to_string(data.rows) + "\n" +
                    std::to_string(data.maxval) + "\n";
  if (encoding == PgmEncoding::Ascii) {
    for (std::size_t r = 0; r < data.rows; ++r) {
      for (std::size_t c = 0; c < data.cols; ++c) {
        if (c > 0) out += ' ';
        out += std::to_string(data.levels[r * data.cols + c]);
      }
      out += '\n';
    }
    return out;
  }
  const bool wide = data.maxval > 255;
  out.reserve(out.size() + data.levels.size() * (wide ? 2 : 1));
  for (std::uint16_t level : data.levels) {
    if (wide) out += static_cast<char>(level >> 8);
    out += static_cast<char>(level & 0xFF);
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const PgmData& data,
               PgmEncoding encoding) {
  write_file_bytes(path, encode_pgm(data, encoding));
}

PgmData quantize(const Image& image, unsigned maxval) {
  if (maxval == 0 || maxval > 65535) throw ParameterError("quantize: maxval out of range");
  PgmData data;
  data.rows = image.rows();
  data.cols = image.cols();
  data.maxval = maxval;
  data.levels.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double v = std::isfinite(image[i]) ? std::clamp(image[i], 0.0, 1.0) : 0.0;
    data.levels[i] = static_cast<std::uint16_t>(std::lround(v * maxval));
  }
  return data;
}

Image to_image(const PgmData& data) {
  Image image(data.rows, data.cols);
  const double scale = 1.0 / static_cast<double>(data.maxval);
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = data.levels[i] * scale;
  return image;
}

void save_pgm(const std::filesystem::path& path, const Image& image,
              PgmEncoding encoding, unsigned maxval) {
  write_pgm(path, quantize(image, maxval), encoding);
}

}  // namespace ghostcs

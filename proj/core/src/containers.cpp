#include "ghostcs/containers.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <limits>

#include "ghostcs/pgm.hpp"

namespace ghostcs {

namespace {

constexpr std::string_view kEnsembleMagic = "GIEN";
constexpr std::string_view kImageMagic = "GIMG";

template <typename T>
void put(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    if (bytes_.size() - pos_ < sizeof(T)) throw FormatError("container truncated");
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(std::begin(bytes), std::end(bytes));
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }

  void expect_magic(std::string_view magic) {
    if (bytes_.substr(0, magic.size()) != magic) {
      throw FormatError("bad container magic (expected '" + std::string(magic) + "')");
    }
    pos_ = magic.size();
    const auto version = get<std::uint16_t>();
    if (version != kContainerVersion) {
      throw UnsupportedFormatError("unsupported container version " +
                                   std::to_string(version));
    }
  }

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t to_u32(std::size_t n, const char* what) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError(std::string(what) + " exceeds the u32 container field");
  }
  return static_cast<std::uint32_t>(n);
}

}  // namespace

std::string encode_ensemble(const MeasurementEnsemble& ensemble) {
  ensemble.validate();
  const PatternStack& patterns = ensemble.patterns;
  std::string out;
  out.reserve(34 + ensemble.size() * (8 + 4 * patterns.pixels()));
  out.append(kEnsembleMagic);
  put<std::uint16_t>(out, kContainerVersion);
  put<std::uint32_t>(out, to_u32(patterns.rows(), "rows"));
  put<std::uint32_t>(out, to_u32(patterns.cols(), "cols"));
  put<std::uint32_t>(out, to_u32(ensemble.size(), "M"));
  put<std::uint64_t>(out, ensemble.provenance.speckle.seed);
  put<double>(out, ensemble.noise_sigma);
  for (double b : ensemble.buckets) put<double>(out, b);
  for (double v : patterns.values()) put<float>(out, static_cast<float>(v));
  return out;
}

MeasurementEnsemble decode_ensemble(std::string_view bytes) {
  Reader reader(bytes);
  reader.expect_magic(kEnsembleMagic);
  const auto rows = reader.get<std::uint32_t>();
  const auto cols = reader.get<std::uint32_t>();
  const auto count = reader.get<std::uint32_t>();
  const auto seed = reader.get<std::uint64_t>();
  const auto noise_sigma = reader.get<double>();
  if (rows == 0 || cols == 0 || count == 0) throw FormatError("GIEN: empty dimensions");
  const std::size_t pixels = std::size_t{rows} * cols;
  if (reader.remaining() != std::size_t{count} * (8 + 4 * pixels)) {
    throw FormatError("GIEN: payload size does not match header");
  }
  MeasurementEnsemble ensemble;
  ensemble.noise_sigma = noise_sigma;
  ensemble.buckets.resize(count);
  for (auto& b : ensemble.buckets) b = reader.get<double>();
  ensemble.patterns = PatternStack(rows, cols, count);
  for (double& v : ensemble.patterns.values()) v = reader.get<float>();
  ensemble.provenance.speckle.rows = rows;
  ensemble.provenance.speckle.cols = cols;
  ensemble.provenance.speckle.seed = seed;
  ensemble.validate();
  return ensemble;
}

void write_ensemble(const std::filesystem::path& path, const MeasurementEnsemble& ensemble) {
  write_file_bytes(path, encode_ensemble(ensemble));
}

MeasurementEnsemble read_ensemble(const std::filesystem::path& path) {
  return decode_ensemble(read_file_bytes(path));
}

std::string encode_raw_image(const Image& image) {
  std::string out;
  out.reserve(14 + 8 * image.size());
  out.append(kImageMagic);
  put<std::uint16_t>(out, kContainerVersion);
  put<std::uint32_t>(out, to_u32(image.rows(), "rows"));
  put<std::uint32_t>(out, to_u32(image.cols(), "cols"));
  for (double v : image) put<double>(out, v);
  return out;
}

Image decode_raw_image(std::string_view bytes) {
  Reader reader(bytes);
  reader.expect_magic(kImageMagic);
  const auto rows = reader.get<std::uint32_t>();
  const auto cols = reader.get<std::uint32_t>();
  if (rows == 0 || cols == 0) throw FormatError("GIMG: empty dimensions");
  if (reader.remaining() != std::size_t{rows} * cols * 8) {
    throw FormatError("GIMG: payload size does not match header");
  }
  Image image(rows, cols);
  for (double& v : image) v = reader.get<double>();
  return image;
}

void write_raw_image(const std::filesystem::path& path, const Image& image) {
  write_file_bytes(path, encode_raw_image(image));
}

Image read_raw_image(const std::filesystem::path& path) {
  return decode_raw_image(read_file_bytes(path));
}

bool is_raw_image(std::string_view bytes) noexcept {
  return bytes.substr(0, kImageMagic.size()) == kImageMagic;
}

}  // namespace ghostcs

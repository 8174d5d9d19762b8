#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ghostcs/grid.hpp"
#include "ghostcs/measurement.hpp"

namespace ghostcs {

/// Binary containers, all integers and floats little-endian.
///
/// Ensemble ("GIEN", version 1):
///   char[4] "GIEN" | u16 version | u32 rows | u32 cols | u32 M | u64 seed |
///   f64 noise_sigma | f64 buckets[M] | f32 patterns[M][rows][cols]
///
/// Raw image ("GIMG", version 1):
///   char[4] "GIMG" | u16 version | u32 rows | u32 cols | f64 values[rows][cols]
inline constexpr std::uint16_t kContainerVersion = 1;

std::string encode_ensemble(const MeasurementEnsemble& ensemble);
/// Restores patterns (widened from f32), buckets, noise_sigma and the speckle
/// seed/shape; other provenance is not stored in the container.
MeasurementEnsemble decode_ensemble(std::string_view bytes);
void write_ensemble(const std::filesystem::path& path, const MeasurementEnsemble& ensemble);
MeasurementEnsemble read_ensemble(const std::filesystem::path& path);

std::string encode_raw_image(const Image& image);
Image decode_raw_image(std::string_view bytes);
void write_raw_image(const std::filesystem::path& path, const Image& image);
Image read_raw_image(const std::filesystem::path& path);

/// True when the bytes start with the "GIMG" magic.
bool is_raw_image(std::string_view bytes) noexcept;

}  // namespace ghostcs

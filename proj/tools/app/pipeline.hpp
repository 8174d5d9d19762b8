#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "app/manifest.hpp"
#include "ghostcs/measurement.hpp"
#include "ghostcs/reconstruct.hpp"

namespace ghostcs::app {

enum class PresetObject { DoubleSlit, Aleph, Grayscale };

/// One end-to-end experiment: object, grid, speckle size and measurement count.
struct PipelinePreset {
  std::string name;
  PresetObject object = PresetObject::DoubleSlit;
  std::size_t rows = 64;
  std::size_t cols = 64;
  double target_fwhm = 1.53;
  std::size_t measurements = 256;
  double tau_scale = 1.0;  ///< multiplier on default_tau
  std::size_t erode_px = 1;
  std::string description;
};

std::span<const PipelinePreset> pipeline_presets();
/// Throws ParameterError for unknown names.
const PipelinePreset& find_preset(std::string_view name);

struct PipelineResult {
  PipelinePreset preset;
  std::uint64_t seed = 0;
  SpeckleParams speckle;
  SparseSolverConfig solver;
  Image object;
  MeasurementEnsemble ensemble;
  Image gi;
  CsResult cs;
  std::optional<LsResult> ls;
  double fwhm = 0.0;
  long resolution_cells = 0;
  std::optional<double> snr_gi;
  std::optional<double> snr_cs;
  std::optional<double> snr_ls;
  double mse_gi = 0.0;
  double mse_cs = 0.0;
  std::optional<double> mse_ls;
  std::map<std::string, double> durations_s;
};

/// Loads the preset object from data_dir (glyph/grayscale presets), acquires
/// noiseless measurements, reconstructs with GI and CS (plus LS when
/// M >= N_pix) and evaluates all of them against the object.
PipelineResult run_pipeline(const PipelinePreset& preset, std::uint64_t seed,
                            const std::filesystem::path& data_dir);

Json pipeline_metrics(const PipelineResult& result);
Json pipeline_parameters(const PipelineResult& result);

/// Default location of the shipped masks and images: GHOSTCS_DATA_DIR if
/// set, else the source-tree data directory, else <prefix>/share/ghostcs
/// relative to an installed executable.
std::filesystem::path default_data_dir();

inline constexpr std::string_view kAlephAsset = "aleph_70x76.pgm";
inline constexpr std::string_view kGrayscaleAsset = "cameraman_70x76.pgm";

}  // namespace ghostcs::app

#include "app/pipeline.hpp"

#include <array>
#include <chrono>
#include <cstdlib>

#include "ghostcs/metrics.hpp"
#include "ghostcs/phantoms.hpp"
#include "ghostcs/sensing.hpp"

namespace ghostcs::app {

namespace {

const std::array<PipelinePreset, 4> kPresets{{
    {"fig2-256", PresetObject::DoubleSlit, 64, 64, 1.53, 256, 1.0, 1,
     "double slit, 64x64, FWHM 1.53 px, 256 realizations"},
    {"fig2-512", PresetObject::DoubleSlit, 64, 64, 1.53, 512, 1.0, 1,
     "double slit, 64x64, FWHM 1.53 px, 512 realizations"},
    {"fig3-aleph", PresetObject::Aleph, 76, 70, 2.01, 1024, 1.0, 1,
     "Aleph glyph, 76x70, FWHM 2.01 px, 1024 measurements"},
    {"fig3-gray", PresetObject::Grayscale, 76, 70, 2.01, 800, 0.1, 1,
     "grayscale image, 76x70, FWHM 2.01 px, 800 simulated buckets on the Aleph patterns"},
}};

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return seconds;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Image load_object(const PipelinePreset& preset, const std::filesystem::path& data_dir) {
  Image object;
  switch (preset.object) {
    case PresetObject::DoubleSlit: {
      DoubleSlitSpec spec;
      spec.rows = preset.rows;
      spec.cols = preset.cols;
      object = double_slit(spec);
      break;
    }
    case PresetObject::Aleph:
      object = load_glyph(data_dir / kAlephAsset);
      break;
    case PresetObject::Grayscale:
      object = load_grayscale(data_dir / kGrayscaleAsset);
      break;
  }
  if (object.rows() != preset.rows || object.cols() != preset.cols) {
    throw FormatError("preset " + preset.name + ": object asset has the wrong shape");
  }
  return object;
}

}  // namespace

std::span<const PipelinePreset> pipeline_presets() { return kPresets; }

const PipelinePreset& find_preset(std::string_view name) {
  for (const auto& preset : kPresets) {
    if (preset.name == name) return preset;
  }
  throw ParameterError("unknown preset '" + std::string(name) + "'");
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("GHOSTCS_DATA_DIR"); env && *env) return env;
  std::error_code ec;
  const std::filesystem::path build_tree = GHOSTCS_DEFAULT_DATA_DIR;
  if (std::filesystem::is_directory(build_tree, ec)) return build_tree;
  // Installed layout: <prefix>/bin/ghostcs next to <prefix>/share/ghostcs.
  const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const auto installed = exe.parent_path().parent_path() / "share" / "ghostcs";
    if (std::filesystem::is_directory(installed, ec)) return installed;
  }
  return build_tree;
}

PipelineResult run_pipeline(const PipelinePreset& preset, std::uint64_t seed,
                            const std::filesystem::path& data_dir) {
  PipelineResult result;
  result.preset = preset;
  result.seed = seed;
  Stopwatch clock;

  result.object = load_object(preset, data_dir);
  result.speckle.mode = SpeckleMode::Spectral;
  result.speckle.rows = preset.rows;
  result.speckle.cols = preset.cols;
  result.speckle.seed = seed;
  result.speckle.aperture_diameter =
      spectral_aperture_for_fwhm(preset.rows, preset.cols, preset.target_fwhm);

  // Buckets are simulated on the first M realizations of the preset's speckle
  // stream, so fig3-gray reuses exactly the fig3-aleph patterns.
  result.ensemble.patterns = generate_patterns(result.speckle, preset.measurements);
  result.ensemble.buckets = simulate_grayscale_buckets(result.ensemble.patterns, result.object);
  result.ensemble.provenance.speckle = result.speckle;
  result.ensemble.provenance.object = preset.name;
  result.durations_s["acquire"] = clock.lap();

  result.fwhm = estimate_speckle_fwhm(result.ensemble.patterns.images());
  result.resolution_cells =
      resolution_cells(static_cast<long>(result.object.size()), result.fwhm);
  result.durations_s["speckle_statistics"] = clock.lap();

  result.gi = gi_reconstruct(result.ensemble);
  result.durations_s["gi"] = clock.lap();

  {
    std::vector<double> centered = result.ensemble.buckets;
    double mean = 0.0;
    for (double b : centered) mean += b;
    mean /= static_cast<double>(centered.size());
    for (double& b : centered) b -= mean;
    const SensingOperator sensing(result.ensemble.patterns, true);
    const DctSensingOperator op(sensing, preset.rows, preset.cols);
    const double tau = preset.tau_scale * default_tau(op, centered);
    if (tau > 0.0) result.solver.tau = tau;
  }
  result.cs = cs_reconstruct(result.ensemble, result.solver, true);
  result.durations_s["cs"] = clock.lap();

  if (preset.measurements >= result.object.size()) {
    result.ls = ls_reconstruct(result.ensemble, 20000, 1e-14);
    result.durations_s["ls"] = clock.lap();
  }

  result.mse_gi = mse(result.gi, result.object);
  result.mse_cs = mse(result.cs.image, result.object);
  if (result.ls) result.mse_ls = mse(result.ls->image, result.object);
  if (is_binary(result.object)) {
    const RegionMasks masks = auto_masks(result.object, preset.erode_px);
    result.snr_gi = snr(result.gi, masks);
    result.snr_cs = snr(result.cs.image, masks);
    if (result.ls) result.snr_ls = snr(result.ls->image, masks);
  }
  result.durations_s["evaluate"] = clock.lap();
  return result;
}

Json pipeline_parameters(const PipelineResult& r) {
  return Json{{"preset", r.preset.name},
              {"description", r.preset.description},
              {"seed", r.seed},
              {"measurements", r.preset.measurements},
              {"noise_sigma", 0.0},
              {"target_fwhm", r.preset.target_fwhm},
              {"speckle", speckle_to_json(r.speckle)},
              {"solver", solver_to_json(r.solver)},
              {"tau_scale", r.preset.tau_scale},
              {"centered", true},
              {"erode_px", r.preset.erode_px}};
}

Json pipeline_metrics(const PipelineResult& r) {
  Json j{{"fwhm", r.fwhm},
         {"resolution_cells", r.resolution_cells},
         {"nyquist_fraction",
          static_cast<double>(r.preset.measurements) / static_cast<double>(r.resolution_cells)},
         {"mse_gi", r.mse_gi},
         {"mse_cs", r.mse_cs},
         {"mse_ratio_gi_over_cs", r.mse_gi / r.mse_cs}};
  if (r.snr_gi && r.snr_cs) {
    j["snr_gi"] = *r.snr_gi;
    j["snr_cs"] = *r.snr_cs;
    j["snr_ratio_cs_over_gi"] = *r.snr_cs / *r.snr_gi;
  }
  if (r.ls) {
    j["mse_ls"] = *r.mse_ls;
    if (r.snr_ls) j["snr_ls"] = *r.snr_ls;
    j["ls_converged"] = r.ls->converged;
  }
  // Reported band for the double-slit runs; not an error if exceeded.
  j["mse_cs_within_soft_band"] = r.mse_cs <= 0.10;
  j["cs_report"] = report_to_json(r.cs.report);
  j["cs_dc_coefficient"] = r.cs.dc_coefficient;
  return j;
}

}  // namespace ghostcs::app

#include "app/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "app/manifest.hpp"
#include "app/pipeline.hpp"
#include "ghostcs/containers.hpp"
#include "ghostcs/metrics.hpp"
#include "ghostcs/pgm.hpp"
#include "ghostcs/phantoms.hpp"
#include "ghostcs/reconstruct.hpp"

namespace ghostcs::app {

namespace fs = std::filesystem;

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 2 usage or invalid parameters, 3 I/O or file format error,\n"
    "4 numerical failure (solver divergence, degenerate statistics).\n"
    "Set GHOSTCS_THREADS to override the worker thread count.";

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

Image read_image_any(const fs::path& path) {
  const std::string bytes = read_file_bytes(path);
  if (is_raw_image(bytes)) return decode_raw_image(bytes);
  return to_image(parse_pgm(bytes));
}

fs::path sibling(const fs::path& path, const char* extension) {
  fs::path out = path;
  out.replace_extension(extension);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_summary(std::ostream& out, const Image& image) {
  double sum = 0.0;
  double lo = image[0];
  double hi = image[0];
  for (double v : image) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out << "rows=" << image.rows() << "\ncols=" << image.cols() << "\nsum=" << format_number(sum)
      << "\nmin=" << format_number(lo) << "\nmax=" << format_number(hi) << "\n";
}

/// Mask file: PGM whose level 2 marks bright pixels, level 1 dark pixels
/// and level 0 unused pixels.
RegionMasks read_mask_file(const fs::path& path) {
  const PgmData data = read_pgm(path);
  if (data.maxval != 2) {
    throw FormatError("mask file must be a PGM with maxval 2 (2 bright, 1 dark, 0 unused)");
  }
  RegionMasks masks{Image(data.rows, data.cols), Image(data.rows, data.cols)};
  for (std::size_t i = 0; i < data.levels.size(); ++i) {
    masks.bright[i] = data.levels[i] == 2 ? 1.0 : 0.0;
    masks.dark[i] = data.levels[i] == 1 ? 1.0 : 0.0;
  }
  return masks;
}

// Removes files registered during a command unless the command completes.
class OutputGuard {
 public:
  void add(const fs::path& path) { paths_.push_back(path); }
  void commit() noexcept { paths_.clear(); }
  ~OutputGuard() {
    std::error_code ignored;
    for (const auto& p : paths_) fs::remove(p, ignored);
  }

 private:
  std::vector<fs::path> paths_;
};

struct PhantomOptions {
  std::string out;
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::size_t width = 6;
  std::size_t sep = 14;
  std::size_t height = 40;
  std::string orientation = "vertical";
  std::string mask;
  std::string input;
  bool ascii = false;
};

struct AcquireOptions {
  std::string phantom;
  std::string out;
  std::string manifest;
  std::string mode = "spectral";
  std::optional<double> aperture;
  double fwhm = 1.53;
  std::size_t macropixel = 4;
  double wavelength = 1.0;
  double distance = 1000.0;
  std::optional<std::size_t> rows;
  std::optional<std::size_t> cols;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::uint64_t noise_seed = 0;
};

struct ReconstructOptions {
  std::string ensemble;
  std::string method;
  std::string out;
  std::string manifest;
  std::optional<double> tau;
  std::optional<double> tau_scale;
  SparseSolverConfig solver;
  bool raw = false;
  std::size_t cg_iters = 20000;
  double cg_tol = 1e-14;
};

struct EvaluateOptions {
  std::string recon;
  std::string reference;
  std::string masks = "auto";
  std::size_t erode = 1;
  std::string manifest;
};

struct PipelineOptions {
  std::string preset;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string data_dir;
};

int cmd_phantom(const std::string& kind, const PhantomOptions& o, std::ostream& out) {
  Image image;
  if (kind == "double-slit") {
    DoubleSlitSpec spec;
    spec.rows = o.rows;
    spec.cols = o.cols;
    spec.slit_width = o.width;
    spec.separation = o.sep;
    spec.slit_height = o.height;
    spec.orientation =
        o.orientation == "horizontal" ? SlitOrientation::Horizontal : SlitOrientation::Vertical;
    image = double_slit(spec);
  } else if (kind == "glyph") {
    image = load_glyph(o.mask.empty() ? default_data_dir() / kAlephAsset : fs::path(o.mask));
  } else {
    image = load_grayscale(o.input);
  }
  save_pgm(o.out, image, o.ascii ? PgmEncoding::Ascii : PgmEncoding::Binary, 65535);
  print_summary(out, image);
  return kExitOk;
}

int cmd_acquire(const AcquireOptions& o, const std::vector<std::string>& argv,
                std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Image object = read_image_any(o.phantom);
  if ((o.rows && *o.rows != object.rows()) || (o.cols && *o.cols != object.cols())) {
    throw ParameterError("phantom is " + std::to_string(object.rows()) + "x" +
                         std::to_string(object.cols()) +
                         " but --rows/--cols request a different grid");
  }
  SpeckleParams params;
  params.mode = o.mode == "fresnel" ? SpeckleMode::Fresnel : SpeckleMode::Spectral;
  params.rows = object.rows();
  params.cols = object.cols();
  params.seed = o.seed;
  params.macropixel = o.macropixel;
  params.wavelength_px = o.wavelength;
  params.distance_px = o.distance;
  params.aperture_diameter =
      o.aperture ? *o.aperture : spectral_aperture_for_fwhm(params.rows, params.cols, o.fwhm);

  MeasurementEnsemble ensemble = acquire(object, params, o.m, o.noise, o.noise_seed);
  ensemble.provenance.object = o.phantom;

  OutputGuard guard;
  guard.add(o.out);
  write_ensemble(o.out, ensemble);

  RunManifest manifest;
  manifest.command = "acquire";
  manifest.argv = argv;
  manifest.parameters = Json{{"phantom", o.phantom},
                             {"measurements", o.m},
                             {"noise_sigma", o.noise},
                             {"noise_seed", o.noise_seed},
                             {"speckle", speckle_to_json(params)}};
  double mean = 0.0;
  for (double b : ensemble.buckets) mean += b;
  mean /= static_cast<double>(ensemble.size());
  manifest.metrics = Json{{"bucket_mean", mean}};
  manifest.durations_s["total"] = seconds_since(start);
  const fs::path manifest_path = o.manifest.empty() ? sibling(o.out, ".json") : fs::path(o.manifest);
  guard.add(manifest_path);
  write_manifest(manifest_path, manifest);
  guard.commit();

  out << "measurements=" << ensemble.size() << "\nrows=" << params.rows
      << "\ncols=" << params.cols << "\nbucket_mean=" << format_number(mean) << "\n";
  return kExitOk;
}

int cmd_reconstruct(const ReconstructOptions& o, const std::vector<std::string>& argv,
                    std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const MeasurementEnsemble ensemble = read_ensemble(o.ensemble);
  RunManifest manifest;
  manifest.command = "reconstruct";
  manifest.argv = argv;
  manifest.parameters = Json{{"ensemble", o.ensemble},
                             {"method", o.method},
                             {"measurements", ensemble.size()},
                             {"rows", ensemble.patterns.rows()},
                             {"cols", ensemble.patterns.cols()},
                             {"seed", ensemble.provenance.speckle.seed},
                             {"noise_sigma", ensemble.noise_sigma}};

  Image image;
  if (o.method == "gi") {
    image = gi_reconstruct(ensemble);
  } else if (o.method == "ls") {
    const LsResult ls = ls_reconstruct(ensemble, o.cg_iters, o.cg_tol);
    image = ls.image;
    manifest.parameters["cg_iters"] = o.cg_iters;
    manifest.parameters["cg_tol"] = o.cg_tol;
    manifest.metrics = Json{{"converged", ls.converged},
                            {"iterations", ls.iterations},
                            {"residual_norm", ls.residual_norm}};
    out << "converged=" << (ls.converged ? "true" : "false") << "\n";
  } else {
    SparseSolverConfig config = o.solver;
    config.tau = o.tau;
    if (!config.tau && o.tau_scale) {
      std::vector<double> b = ensemble.buckets;
      if (!o.raw) {
        double mean = 0.0;
        for (double v : b) mean += v;
        mean /= static_cast<double>(b.size());
        for (double& v : b) v -= mean;
      }
      const SensingOperator sensing(ensemble.patterns, !o.raw);
      const DctSensingOperator op(sensing, ensemble.patterns.rows(), ensemble.patterns.cols());
      const double tau = *o.tau_scale * default_tau(op, b);
      if (tau > 0.0) config.tau = tau;
    }
    const CsResult cs = cs_reconstruct(ensemble, config, !o.raw);
    image = cs.image;
    manifest.parameters["solver"] = solver_to_json(config);
    manifest.parameters["centered"] = !o.raw;
    if (o.tau_scale) manifest.parameters["tau_scale"] = *o.tau_scale;
    manifest.metrics = Json{{"solve_report", report_to_json(cs.report)},
                            {"dc_coefficient", cs.dc_coefficient}};
    out << "converged=" << (cs.report.converged ? "true" : "false")
        << "\niterations=" << cs.report.iterations << "\ntau=" << format_number(cs.report.tau)
        << "\nnonzeros=" << cs.report.nonzeros << "\n";
  }

  OutputGuard guard;
  const fs::path raw_path = sibling(o.out, ".gimg");
  const fs::path manifest_path = o.manifest.empty() ? sibling(o.out, ".json") : fs::path(o.manifest);
  guard.add(o.out);
  save_pgm(o.out, normalize_affine(image));
  guard.add(raw_path);
  write_raw_image(raw_path, image);
  manifest.durations_s["total"] = seconds_since(start);
  guard.add(manifest_path);
  write_manifest(manifest_path, manifest);
  guard.commit();
  return kExitOk;
}

int cmd_evaluate(const EvaluateOptions& o, const std::vector<std::string>& argv,
                 std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Image recon = read_image_any(o.recon);
  const Image reference = read_image_any(o.reference);
  require_same_shape(recon, reference, "evaluate");

  std::optional<RegionMasks> masks;
  if (o.masks == "auto") {
    if (!is_binary(reference)) {
      throw ParameterError(
          "--masks auto needs a binary reference; pass an explicit mask file "
          "(--masks path.pgm) or --masks none");
    }
    masks = auto_masks(reference, o.erode);
  } else if (o.masks != "none") {
    masks = read_mask_file(o.masks);
    require_same_shape(masks->bright, recon, "evaluate masks");
    masks->validate();
  }

  RunManifest manifest;
  manifest.command = "evaluate";
  manifest.argv = argv;
  manifest.parameters = Json{{"recon", o.recon},
                             {"reference", o.reference},
                             {"masks", o.masks},
                             {"erode_px", o.erode}};
  const double mse_value = mse(recon, reference);
  if (masks) {
    const double snr_value = snr(recon, *masks);
    out << "snr=" << format_number(snr_value) << "\n";
    manifest.metrics["snr"] = snr_value;
    manifest.metrics["bright_pixels"] = masks->bright_count();
    manifest.metrics["dark_pixels"] = masks->dark_count();
  }
  out << "mse=" << format_number(mse_value) << "\n";
  manifest.metrics["mse"] = mse_value;
  if (masks) {
    out << "bright_pixels=" << masks->bright_count() << "\ndark_pixels=" << masks->dark_count()
        << "\n";
  }
  if (!o.manifest.empty()) {
    manifest.durations_s["total"] = seconds_since(start);
    write_manifest(o.manifest, manifest);
  }
  return kExitOk;
}

int cmd_pipeline(const PipelineOptions& o, const std::vector<std::string>& argv,
                 std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const PipelinePreset& preset = find_preset(o.preset);
  const fs::path data_dir = o.data_dir.empty() ? default_data_dir() : fs::path(o.data_dir);
  const PipelineResult result = run_pipeline(preset, o.seed, data_dir);

  const fs::path dir = o.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");

  OutputGuard guard;
  auto write_pair = [&](const std::string& stem, const Image& image) {
    guard.add(dir / (stem + ".pgm"));
    save_pgm(dir / (stem + ".pgm"), normalize_affine(image));
    guard.add(dir / (stem + ".gimg"));
    write_raw_image(dir / (stem + ".gimg"), image);
  };
  guard.add(dir / "object.pgm");
  save_pgm(dir / "object.pgm", result.object);
  write_pair("gi", result.gi);
  write_pair("cs", result.cs.image);
  if (result.ls) write_pair("ls", result.ls->image);

  RunManifest manifest;
  manifest.command = "pipeline";
  manifest.argv = argv;
  manifest.parameters = pipeline_parameters(result);
  manifest.metrics = pipeline_metrics(result);
  manifest.durations_s = result.durations_s;
  manifest.durations_s["total"] = seconds_since(start);
  guard.add(dir / "manifest.json");
  write_manifest(dir / "manifest.json", manifest);
  guard.commit();

  out << "preset=" << preset.name << "\nfwhm=" << format_number(result.fwhm)
      << "\nresolution_cells=" << result.resolution_cells << "\n";
  if (result.snr_gi) {
    out << "snr_gi=" << format_number(*result.snr_gi) << "\nsnr_cs="
        << format_number(*result.snr_cs) << "\n";
  }
  out << "mse_gi=" << format_number(result.mse_gi) << "\nmse_cs="
      << format_number(result.mse_cs) << "\n";
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter:
      return kExitUsage;
    case ErrorKind::Io:
    case ErrorKind::Format:
    case ErrorKind::Unsupported:
    case ErrorKind::Data:
      return kExitIo;
    case ErrorKind::Degenerate:
    case ErrorKind::Solver:
      return kExitNumerical;
  }
  return kExitNumerical;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ghostcs: computational ghost imaging with compressed-sensing reconstruction",
               "ghostcs"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", GHOSTCS_VERSION);

  // phantom
  PhantomOptions phantom;
  auto* phantom_cmd = app.add_subcommand("phantom", "Write a test object as a PGM image");
  phantom_cmd->require_subcommand(1);
  auto add_common_phantom = [&](CLI::App* sub) {
    sub->add_option("--out", phantom.out, "Output PGM path")->required();
    sub->add_flag("--ascii", phantom.ascii, "Write P2 instead of P5");
  };
  auto* slit_cmd = phantom_cmd->add_subcommand("double-slit", "Binary double-slit plate");
  add_common_phantom(slit_cmd);
  slit_cmd->add_option("--rows", phantom.rows, "Grid rows")->capture_default_str();
  slit_cmd->add_option("--cols", phantom.cols, "Grid columns")->capture_default_str();
  slit_cmd->add_option("--width", phantom.width, "Slit width (px)")->capture_default_str();
  slit_cmd->add_option("--sep", phantom.sep, "Center-to-center separation (px)")
      ->capture_default_str();
  slit_cmd->add_option("--height", phantom.height, "Slit height (px)")->capture_default_str();
  slit_cmd->add_option("--orientation", phantom.orientation, "vertical or horizontal")
      ->check(CLI::IsMember({"vertical", "horizontal"}))
      ->capture_default_str();
  auto* glyph_cmd = phantom_cmd->add_subcommand("glyph", "Binary glyph mask (default: Aleph)");
  add_common_phantom(glyph_cmd);
  glyph_cmd->add_option("--mask", phantom.mask, "Binary mask PGM");
  auto* gray_cmd = phantom_cmd->add_subcommand("grayscale", "Grayscale PGM pass-through");
  add_common_phantom(gray_cmd);
  gray_cmd->add_option("--in", phantom.input, "Input PGM (P2/P5, 8 or 16 bit)")->required();

  // acquire
  AcquireOptions acq;
  auto* acq_cmd = app.add_subcommand("acquire", "Simulate speckle illumination and bucket values");
  acq_cmd->add_option("--phantom", acq.phantom, "Object image (PGM or GIMG)")->required();
  acq_cmd->add_option("--out", acq.out, "Output ensemble (GIEN)")->required();
  acq_cmd->add_option("--manifest", acq.manifest, "Manifest path (default: <out>.json)");
  acq_cmd->add_option("--mode", acq.mode, "spectral or fresnel")
      ->check(CLI::IsMember({"spectral", "fresnel"}))
      ->capture_default_str();
  acq_cmd->add_option("--aperture", acq.aperture, "Spectral pupil diameter (frequency px)");
  acq_cmd->add_option("--fwhm", acq.fwhm, "Target speckle FWHM when --aperture is not given")
      ->capture_default_str();
  acq_cmd->add_option("--macropixel", acq.macropixel, "Fresnel: SLM cell size (px)")
      ->capture_default_str();
  acq_cmd->add_option("--wavelength", acq.wavelength, "Fresnel: wavelength (px)")
      ->capture_default_str();
  acq_cmd->add_option("--distance", acq.distance, "Fresnel: propagation distance (px)")
      ->capture_default_str();
  acq_cmd->add_option("--rows", acq.rows, "Expected grid rows (checked against the phantom)");
  acq_cmd->add_option("--cols", acq.cols, "Expected grid columns");
  acq_cmd->add_option("--m", acq.m, "Number of measurements")
      ->required()
      ->check(CLI::PositiveNumber);
  acq_cmd->add_option("--seed", acq.seed, "Speckle seed")->capture_default_str();
  acq_cmd->add_option("--noise", acq.noise, "Relative bucket noise std")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  acq_cmd->add_option("--noise-seed", acq.noise_seed, "Noise seed")->capture_default_str();

  // reconstruct
  ReconstructOptions rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Reconstruct an image from an ensemble");
  rec_cmd->add_option("--ensemble", rec.ensemble, "Ensemble file (GIEN)")->required();
  rec_cmd->add_option("--method", rec.method, "gi, ls or cs")
      ->required()
      ->check(CLI::IsMember({"gi", "ls", "cs"}));
  rec_cmd->add_option("--out", rec.out, "Normalized PGM output; raw .gimg written alongside")
      ->required();
  rec_cmd->add_option("--manifest", rec.manifest, "Manifest path (default: <out>.json)");
  auto* tau_opt = rec_cmd->add_option("--tau", rec.tau, "L1 weight")->check(CLI::PositiveNumber);
  rec_cmd->add_option("--tau-scale", rec.tau_scale, "L1 weight as a multiple of the default")
      ->check(CLI::PositiveNumber)
      ->excludes(tau_opt);
  rec_cmd->add_option("--max-iters", rec.solver.max_iters, "GPSR iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rec_cmd->add_option("--tol", rec.solver.tol, "Relative objective-change stop")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rec_cmd->add_option("--beta", rec.solver.beta, "Backtracking factor in (0,1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  rec_cmd->add_option("--mu", rec.solver.mu, "Sufficient-decrease constant in (0,1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  rec_cmd->add_flag("--debias", rec.solver.debias, "Refit the recovered support by CG");
  rec_cmd->add_option("--debias-iters", rec.solver.debias_cg_iters, "Debias CG iteration cap")
      ->capture_default_str();
  rec_cmd->add_flag("--bb", rec.solver.barzilai_borwein, "Barzilai-Borwein step selection");
  rec_cmd->add_flag("--raw", rec.raw, "Use uncentered buckets and patterns in CS");
  rec_cmd->add_option("--cg-iters", rec.cg_iters, "LS conjugate-gradient iteration cap")
      ->capture_default_str();
  rec_cmd->add_option("--cg-tol", rec.cg_tol, "LS relative normal-equation tolerance")
      ->capture_default_str();

  // evaluate
  EvaluateOptions ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "SNR and MSE of a reconstruction");
  ev_cmd->add_option("--recon", ev.recon, "Reconstruction (PGM or GIMG)")->required();
  ev_cmd->add_option("--reference", ev.reference, "Reference image in [0,1]")->required();
  ev_cmd->add_option("--masks", ev.masks,
                     "auto (from a binary reference), none, or a mask PGM with maxval 2 "
                     "(2 bright, 1 dark, 0 unused)")
      ->capture_default_str();
  ev_cmd->add_option("--erode", ev.erode, "Erosion steps for auto masks")->capture_default_str();
  ev_cmd->add_option("--manifest", ev.manifest, "Optional manifest output path");

  // pipeline
  PipelineOptions pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run a preset experiment end to end");
  std::vector<std::string> preset_names;
  for (const auto& p : pipeline_presets()) preset_names.push_back(p.name);
  pipe_cmd->add_option("--preset", pipe.preset, "Experiment preset")
      ->required()
      ->check(CLI::IsMember(preset_names));
  pipe_cmd->add_option("--seed", pipe.seed, "Speckle seed")->capture_default_str();
  pipe_cmd->add_option("--out-dir", pipe.out_dir, "Output directory")->required();
  pipe_cmd->add_option("--data-dir", pipe.data_dir, "Directory holding the shipped assets");

  std::vector<const char*> raw_argv{"ghostcs"};
  for (const auto& a : args) raw_argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw_argv.size()), raw_argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << GHOSTCS_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    // Subcommand help is the most useful pointer after a failed parse.
    for (const auto* sub : app.get_subcommands()) {
      err << "run 'ghostcs " << sub->get_name() << " --help' for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (phantom_cmd->parsed()) {
      const std::string kind = slit_cmd->parsed()   ? "double-slit"
                               : glyph_cmd->parsed() ? "glyph"
                                                     : "grayscale";
      return cmd_phantom(kind, phantom, out);
    }
    if (acq_cmd->parsed()) return cmd_acquire(acq, args, out);
    if (rec_cmd->parsed()) return cmd_reconstruct(rec, args, out);
    if (ev_cmd->parsed()) return cmd_evaluate(ev, args, out);
    if (pipe_cmd->parsed()) return cmd_pipeline(pipe, args, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error (io): " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace ghostcs::app

#include "app/manifest.hpp"

#include "ghostcs/errors.hpp"
#include "ghostcs/pgm.hpp"

namespace ghostcs::app {

void to_json(Json& j, const RunManifest& m) {
  j = Json{{"tool", m.tool},
           {"version", m.version},
           {"command", m.command},
           {"argv", m.argv},
           {"parameters", m.parameters},
           {"metrics", m.metrics},
           {"durations_s", m.durations_s}};
}

void from_json(const Json& j, RunManifest& m) {
  j.at("tool").get_to(m.tool);
  j.at("version").get_to(m.version);
  j.at("command").get_to(m.command);
  j.at("argv").get_to(m.argv);
  m.parameters = j.at("parameters");
  m.metrics = j.at("metrics");
  j.at("durations_s").get_to(m.durations_s);
}

std::string encode_manifest(const RunManifest& manifest) {
  return Json(manifest).dump(2) + "\n";
}

RunManifest decode_manifest(const std::string& text) {
  try {
    return Json::parse(text).get<RunManifest>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  write_file_bytes(path, encode_manifest(manifest));
}

RunManifest read_manifest(const std::filesystem::path& path) {
  return decode_manifest(read_file_bytes(path));
}

RunManifest without_durations(RunManifest manifest) {
  manifest.durations_s.clear();
  return manifest;
}

Json speckle_to_json(const SpeckleParams& p) {
  Json j{{"mode", p.mode == SpeckleMode::Fresnel ? "fresnel" : "spectral"},
         {"rows", p.rows},
         {"cols", p.cols},
         {"seed", p.seed}};
  if (p.mode == SpeckleMode::Fresnel) {
    j["macropixel"] = p.macropixel;
    j["wavelength_px"] = p.wavelength_px;
    j["distance_px"] = p.distance_px;
  } else {
    j["aperture_diameter"] = p.aperture_diameter;
  }
  return j;
}

Json solver_to_json(const SparseSolverConfig& c) {
  Json j{{"max_iters", c.max_iters}, {"tol", c.tol},       {"beta", c.beta},
         {"mu", c.mu},               {"debias", c.debias}, {"debias_cg_iters", c.debias_cg_iters},
         {"barzilai_borwein", c.barzilai_borwein}};
  j["tau"] = c.tau ? Json(*c.tau) : Json(nullptr);
  return j;
}

Json report_to_json(const SolveReport& r) {
  return Json{{"iterations", r.iterations},
              {"tau", r.tau},
              {"final_objective", r.final_objective},
              {"converged", r.converged},
              {"nonzeros", r.nonzeros},
              {"debiased", r.debiased},
              {"debias_iterations", r.debias_iterations},
              {"objective_trace", r.objective_trace}};
}

}  // namespace ghostcs::app

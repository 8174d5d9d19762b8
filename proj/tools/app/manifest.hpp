#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghostcs/field_sim.hpp"
#include "ghostcs/gpsr.hpp"

namespace ghostcs::app {

using Json = nlohmann::ordered_json;

/// Record of one tool invocation: the command line, every resolved
/// parameter, the resulting metrics and wall-clock durations. Everything
/// except `durations_s` is a deterministic function of the command line.
struct RunManifest {
  std::string tool = "ghostcs";
  std::string version = GHOSTCS_VERSION;
  std::string command;
  std::vector<std::string> argv;
  Json parameters = Json::object();
  Json metrics = Json::object();
  std::map<std::string, double> durations_s;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

void to_json(Json& j, const RunManifest& manifest);
void from_json(const Json& j, RunManifest& manifest);

std::string encode_manifest(const RunManifest& manifest);
RunManifest decode_manifest(const std::string& text);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Manifest with durations removed, for run-to-run comparison.
RunManifest without_durations(RunManifest manifest);

Json speckle_to_json(const SpeckleParams& params);
Json solver_to_json(const SparseSolverConfig& config);
Json report_to_json(const SolveReport& report);

}  // namespace ghostcs::app

#pragma once

#include <filesystem>

#include "scabench/adapters.hpp"
#include "scabench/snapshot.hpp"
#include "scabench/transport.hpp"

namespace scabench {

void to_json(nlohmann::json& j, const AdapterConfig& c);
void from_json(const nlohmann::json& j, AdapterConfig& c);

// Top-level run configuration: what to build, which tools to drive, how to
// reach the network, where artifacts go. Credentials are referenced by
// environment variable name only.
struct RunConfigFile {
  BuildConfig build;
  std::map<ToolId, AdapterConfig> adapters;
  std::vector<ToolId> tools;
  TransportMode transport_mode = TransportMode::Replay;
  std::filesystem::path fixture_dir;
  std::filesystem::path command_fixture_dir;
  std::filesystem::path output_dir = "runs";
  int attempts_max = 3;
  int repeats = 2;
};

void to_json(nlohmann::json& j, const RunConfigFile& c);
void from_json(const nlohmann::json& j, RunConfigFile& c);

// Loads a config file, auto-detecting JSON vs TOML from the content.
RunConfigFile load_run_config(const std::filesystem::path& path);

// Minimal TOML reader covering the config surface: [table] and
// [nested.table] headers, string/int/float/bool scalars and flat arrays,
// '#' comments. Returns the equivalent JSON object.
nlohmann::json toml_to_json(const std::string& text);

}  // namespace scabench

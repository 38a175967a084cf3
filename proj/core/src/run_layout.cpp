#include "scabench/run_layout.hpp"

#include <chrono>

#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

RunPaths create_run_dir(const std::filesystem::path& base, const std::string& digest) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);

  RunPaths paths;
  paths.root = base / (std::string(stamp) + "-" + digest.substr(0, 12));
  std::filesystem::create_directories(paths.root);
  return paths;
}

void save_tool_result(const RunPaths& paths, const ToolRunResult& result,
                      const std::string& suffix) {
  const auto dir = paths.tool_dir(result.tool);
  std::filesystem::create_directories(dir / "raw");

  save_findings_jsonl(dir / ("findings" + suffix + ".jsonl"), result.findings);

  nlohmann::json meta{
      {"normalized_count", result.normalized_count},
      {"raw_count", result.raw_count},
      {"result_hash", result.result_hash},
      {"skipped", result.skipped},
      {"skipped_count", result.skipped_count},
      {"tool", to_string(result.tool)},
  };
  write_json_file(dir / ("result" + suffix + ".json"), meta);

  for (size_t i = 0; i < result.raw_artifacts.size(); ++i)
    write_json_file(dir / "raw" / ("artifact" + suffix + "-" + std::to_string(i) + ".json"),
                    result.raw_artifacts[i]);
}

ToolRunResult load_tool_result(const RunPaths& paths, ToolId tool, const std::string& suffix) {
  const auto dir = paths.tool_dir(tool);
  ToolRunResult result;
  result.tool = tool;
  result.findings = load_findings_jsonl(dir / ("findings" + suffix + ".jsonl"));
  auto meta = read_json_file(dir / ("result" + suffix + ".json"));
  result.raw_count = meta.value("raw_count", 0LL);
  result.normalized_count = meta.value("normalized_count", 0LL);
  result.skipped_count = meta.value("skipped_count", 0LL);
  result.result_hash = meta.value("result_hash", std::string());
  if (meta.contains("skipped"))
    result.skipped = meta.at("skipped").get<std::vector<nlohmann::json>>();
  return result;
}

std::vector<NormalizedFinding> load_findings_jsonl(const std::filesystem::path& path) {
  std::vector<NormalizedFinding> findings;
  for (const auto& row : read_jsonl_file(path)) findings.push_back(row.get<NormalizedFinding>());
  return findings;
}

void save_findings_jsonl(const std::filesystem::path& path,
                         const std::vector<NormalizedFinding>& findings) {
  std::vector<nlohmann::json> rows;
  rows.reserve(findings.size());
  for (const auto& f : findings) rows.push_back(f);
  write_jsonl_file(path, rows);
}

}  // namespace scabench

#pragma once

#include <filesystem>

#include "scabench/adapters.hpp"

namespace scabench {

// On-disk layout of one run: runs/<timestamp>-<digest-prefix>/ holding the
// snapshot, SBOM, per-tool raw and normalized findings, evaluation output,
// statistics and rendered reports.
struct RunPaths {
  std::filesystem::path root;

  std::filesystem::path snapshot_dir() const { return root / "snapshot"; }
  std::filesystem::path sbom_dir() const { return root / "sbom"; }
  std::filesystem::path tool_dir(ToolId tool) const {
    return root / "tools" / to_string(tool);
  }
  std::filesystem::path evaluation_dir() const { return root / "evaluation"; }
  std::filesystem::path stats_dir() const { return root / "stats"; }
  std::filesystem::path reports_dir() const { return root / "reports"; }
  std::filesystem::path manifest_file() const { return root / "run-manifest.json"; }
};

RunPaths create_run_dir(const std::filesystem::path& base, const std::string& digest);

// Tool results split so run artifacts stay byte-stable: findings +
// reconciliation counts in files, timing only in the run manifest.
void save_tool_result(const RunPaths& paths, const ToolRunResult& result,
                      const std::string& suffix = "");
ToolRunResult load_tool_result(const RunPaths& paths, ToolId tool,
                               const std::string& suffix = "");

std::vector<NormalizedFinding> load_findings_jsonl(const std::filesystem::path& path);
void save_findings_jsonl(const std::filesystem::path& path,
                         const std::vector<NormalizedFinding>& findings);

}  // namespace scabench

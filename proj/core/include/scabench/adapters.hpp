#pragma once

#include <filesystem>
#include <memory>

#include "scabench/process.hpp"
#include "scabench/sbom.hpp"
#include "scabench/snapshot.hpp"
#include "scabench/transport.hpp"

namespace scabench {

struct AdapterConfig {
  ToolId tool = ToolId::Replay;
  std::string endpoint;  // base URL (REST/GraphQL tools) or executable path (CLI tools)
  // Credential environment variable NAMES; values are resolved at run time
  // and never persisted.
  std::map<std::string, std::string> credential_env;
  int retry = 3;
  long timeout_seconds = 180;
  int batch_size = 128;                     // oss-index only
  std::filesystem::path findings_fixture;   // replay adapter input (JSONL)
  std::filesystem::path work_dir;           // scratch space for CLI inputs

  void validate() const;
};

struct ToolRunResult {
  ToolId tool = ToolId::Replay;
  std::vector<NormalizedFinding> findings;  // canonical order, deduplicated
  std::vector<nlohmann::json> raw_artifacts;
  std::vector<nlohmann::json> skipped;  // machine-readable skip reasons
  long long raw_count = 0;              // invariant: raw = normalized + skipped
  long long normalized_count = 0;
  long long skipped_count = 0;
  std::string result_hash;
  std::string started_at;
  std::string finished_at;
};

// Digest over the canonical findings serialization; repeat runs on frozen
// inputs must reproduce it bit-exactly.
std::string hash_findings(const std::vector<NormalizedFinding>& findings);

class ToolAdapter {
public:
  virtual ~ToolAdapter() = default;
  virtual ToolId id() const = 0;
  virtual ToolRunResult run(const Snapshot& snapshot, const SbomDocument& sbom,
                            const AdapterConfig& cfg, Transport& transport,
                            CommandRunner& runner) = 0;
};

std::unique_ptr<ToolAdapter> make_adapter(ToolId tool);

namespace adapter_detail {

// Shared accumulator enforcing normalization totality: every raw row ends
// up normalized, or skipped with a reason; duplicates count as skipped.
class FindingCollector {
public:
  FindingCollector(ToolId tool, const Snapshot& snapshot);

  void add(NormalizedFinding finding);
  void skip(const std::string& reason, const nlohmann::json& detail);

  ToolRunResult finish();

private:
  ToolId tool_;
  const Snapshot& snapshot_;
  ToolRunResult result_;
  std::set<std::tuple<std::string, std::string, std::string, std::string, std::string>> seen_;
  std::set<std::tuple<std::string, std::string, std::string>> input_tuples_;
};

std::string resolve_env(const AdapterConfig& cfg, const std::string& key,
                        const std::string& fallback_var);
std::string utc_now();

}  // namespace adapter_detail

}  // namespace scabench

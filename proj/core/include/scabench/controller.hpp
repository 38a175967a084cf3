#pragma once

#include <functional>

#include "scabench/adapters.hpp"
#include "scabench/builder.hpp"
#include "scabench/diff.hpp"
#include "scabench/evaluation.hpp"

namespace scabench {

struct RunAttempt {
  int index = 0;
  std::string gt_before;
  std::string gt_after;
  // tool -> one result hash per repeat
  std::map<ToolId, std::vector<std::string>> repeat_hashes;
  std::string status;  // accepted | failed-execution | failed-drift
  std::string error;
  std::string started_at;
  std::string finished_at;
};

struct AcceptedRun {
  Snapshot snapshot;
  SbomDocument sbom;
  // repeat -> tool -> result
  std::vector<std::map<ToolId, ToolRunResult>> repeat_results;
  std::vector<std::map<ToolId, MatchOutcome>> repeat_outcomes;
  EvaluationReport report;  // aggregated over repeats (mean of counts)
  DetectionMatrix matrix;   // R * |GT| rows
  OmnibusResult omnibus;
  std::vector<PairwiseComparison> pairwise;
  std::vector<RunAttempt> attempts;
  // Repeat-hash divergence is surfaced, never auto-rejected; diverging
  // repeats are flagged for manual inspection.
  bool repeat_divergence = false;
};

struct ControllerConfig {
  BuildConfig build;
  std::map<ToolId, AdapterConfig> adapters;
  std::vector<ToolId> tools;
  int attempts_max = 3;
  int repeats = 2;
};

// Environment seam: how the controller reaches the data sources and tools.
// Tests swap these to script drift and execution faults.
struct ControllerEnv {
  std::function<Snapshot()> build_gt;
  std::function<ToolRunResult(ToolId, const Snapshot&, const SbomDocument&, int repeat)> run_tool;
  std::function<void(const std::string&)> warn = [](const std::string&) {};
};

// Algorithm: per attempt, build GT0 and hash it, run all tools R times on
// the frozen (GT0, SBOM0), rebuild GT1 and compare hashes. Execution
// failure or hash drift discards the attempt; exhausting attempts_max
// aborts. On acceptance, repeat metrics are aggregated, detection vectors
// concatenated, and omnibus plus pairwise statistics computed.
AcceptedRun run_controlled(const ControllerConfig& cfg, ControllerEnv env);

// Production wiring over real clients, adapters and transports.
ControllerEnv make_controller_env(const ControllerConfig& cfg, OsvClient& osv,
                                  RegistryClient& registry, Transport& transport,
                                  CommandRunner& runner);

}  // namespace scabench

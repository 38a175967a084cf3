#pragma once

#include <map>
#include <vector>

#include "scabench/evaluation.hpp"
#include "scabench/snapshot.hpp"

namespace scabench {

struct EcosystemDelta {
  long long removed = 0;
  long long added = 0;
  long long delta_cve_findings = 0;
  long long delta_distinct_cves = 0;
};

// Structural diff of two snapshots keyed on exact (e,c,v,u) tuples. An
// advisory replacement on the same coordinate shows up as one removed +
// one added row, never as a rename.
struct SnapshotDiff {
  std::vector<GroundTruthEntry> removed;  // in s0, not in s1
  std::vector<GroundTruthEntry> added;    // in s1, not in s0
  std::map<EcosystemId, EcosystemDelta> per_ecosystem;
  EcosystemDelta total;  // delta_distinct_cves uses the global distinct count
};

SnapshotDiff diff_snapshots(const Snapshot& s0, const Snapshot& s1);

struct MetricDelta {
  long long tp = 0;
  long long fp_gt = 0;
  long long fn = 0;
  std::optional<double> recall;
  std::optional<double> overlap;
};

// Element-wise signed differences per tool x ecosystem (+ TOTAL).
struct EvaluationDiff {
  // Key: ecosystem name or "TOTAL".
  std::map<ToolId, std::map<std::string, MetricDelta>> per_tool;
};

EvaluationDiff diff_evaluations(const EvaluationReport& e0, const EvaluationReport& e1);

}  // namespace scabench

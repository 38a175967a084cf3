#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "scabench/snapshot.hpp"
#include "scabench/stat_tests.hpp"

namespace scabench {

struct MatchedEntry {
  GroundTruthEntry entry;
  NormalizedFinding finding;  // the finding that credited the entry
  MatchBasis basis = MatchBasis::Exact;
};

// Partition of one tool run against the snapshot: tp ∪ fn covers GT
// exactly; every deduplicated finding lands in tp-credit or fp_gt.
struct MatchOutcome {
  ToolId tool = ToolId::Replay;
  std::vector<MatchedEntry> tp;
  std::vector<NormalizedFinding> fp_gt;
  std::vector<GroundTruthEntry> fn;
};

// Matching semantics: a GT entry g matches a finding f iff they share the
// ecosystem and component, their identifier sets intersect, and either the
// versions are equal under the ecosystem grammar (exact) or f carries a
// range covering g's version (range). A range finding credits every
// covered entry.
MatchOutcome match(const Snapshot& gt, const std::vector<NormalizedFinding>& findings);

struct MetricRow {
  ToolId tool = ToolId::Replay;
  std::optional<EcosystemId> ecosystem;  // nullopt = TOTAL row
  long long components = 0;
  long long vulnerabilities = 0;
  long long cves = 0;
  long long tp = 0;
  long long fp_gt = 0;
  long long fn = 0;
  // Absent when the denominator is zero; never reported as 0 in that case.
  std::optional<double> recall;
  std::optional<double> overlap;
};

// Per-ecosystem row; fp findings count toward the ecosystem they were
// reported in.
MetricRow metrics(const Snapshot& gt, const MatchOutcome& outcome, EcosystemId scope);
std::vector<MetricRow> metrics_by_ecosystem(const Snapshot& gt, const MatchOutcome& outcome);

// TOTAL row: counts are sums; recall and overlap are unweighted macro-means
// of the per-ecosystem ratios.
MetricRow aggregate_total(const std::vector<MetricRow>& rows);

// Binary detection column over the snapshot's canonical entry order.
std::vector<std::uint8_t> detection_vector(const Snapshot& gt, const MatchOutcome& outcome);

struct EvaluationReport {
  std::string snapshot_digest;
  // Per tool: per-ecosystem rows followed by the TOTAL row.
  std::map<ToolId, std::vector<MetricRow>> rows;
};

void to_json(nlohmann::json& j, const MetricRow& row);
void from_json(const nlohmann::json& j, MetricRow& row);
void to_json(nlohmann::json& j, const EvaluationReport& report);
void from_json(const nlohmann::json& j, EvaluationReport& report);

// Assembles the detection matrix for the given tools, concatenating one
// block of |GT| rows per outcome in `outcomes_per_repeat` order.
DetectionMatrix build_detection_matrix(
    const Snapshot& gt, const std::vector<ToolId>& tools,
    const std::vector<std::map<ToolId, MatchOutcome>>& outcomes_per_repeat);

}  // namespace scabench

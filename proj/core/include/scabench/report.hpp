#pragma once

#include <string>
#include <vector>

#include "scabench/diff.hpp"
#include "scabench/evaluation.hpp"
#include "scabench/snapshot.hpp"
#include "scabench/stat_tests.hpp"

namespace scabench {

// Table renderers. Ratios print with two decimals; p-values below 0.001
// print as "<0.001". Machine-precision values live in the JSON artifacts,
// not here.

std::string render_metrics_markdown(const EvaluationReport& report);
std::string render_metrics_csv(const EvaluationReport& report);

std::string render_dataset_stats_markdown(const SnapshotStats& stats);
std::string render_dataset_stats_csv(const SnapshotStats& stats);
std::string render_frequency_stats_markdown(const SnapshotStats& stats);
std::string render_frequency_stats_csv(const SnapshotStats& stats);

std::string render_pairwise_markdown(const std::vector<PairwiseComparison>& table);
std::string render_pairwise_csv(const std::vector<PairwiseComparison>& table);

std::string render_snapshot_diff_markdown(const SnapshotDiff& diff);
std::string render_snapshot_diff_csv(const SnapshotDiff& diff);

std::string render_eval_diff_markdown(const EvaluationReport& e0, const EvaluationReport& e1,
                                      const EvaluationDiff& diff);
std::string render_eval_diff_csv(const EvaluationReport& e0, const EvaluationReport& e1,
                                 const EvaluationDiff& diff);
// Per-tool, per-ecosystem before/after/delta rows.
std::string render_eval_diff_detailed_csv(const EvaluationReport& e0, const EvaluationReport& e1,
                                          const EvaluationDiff& diff);

// Plot data: per-tool mean recall and mean overlap (scatter input).
std::string render_tool_scatter_csv(const EvaluationReport& report);
// Plot data: pairwise significance matrix (adjusted p + significance flag).
std::string render_significance_matrix_csv(const std::vector<PairwiseComparison>& table);

std::string format_ratio(const std::optional<double>& value);  // "0.82" or ""
std::string format_p(double p);                                // "<0.001" or "0.052"

}  // namespace scabench

#include "scabench/diff.hpp"

#include <algorithm>

#include "scabench/errors.hpp"

namespace scabench {

SnapshotDiff diff_snapshots(const Snapshot& s0, const Snapshot& s1) {
  SnapshotDiff diff;

  std::vector<GroundTruthEntry> a = s0.entries, b = s1.entries;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff.removed));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(diff.added));

  const SnapshotStats stats0 = compute_stats(s0.entries);
  const SnapshotStats stats1 = compute_stats(s1.entries);

  std::set<EcosystemId> ecosystems;
  for (const auto& [eco, _] : stats0.per_ecosystem) ecosystems.insert(eco);
  for (const auto& [eco, _] : stats1.per_ecosystem) ecosystems.insert(eco);

  for (EcosystemId eco : ecosystems) {
    EcosystemDelta delta;
    for (const auto& e : diff.removed)
      if (e.ecosystem == eco) ++delta.removed;
    for (const auto& e : diff.added)
      if (e.ecosystem == eco) ++delta.added;
    const auto it0 = stats0.per_ecosystem.find(eco);
    const auto it1 = stats1.per_ecosystem.find(eco);
    const long long cvef0 = it0 == stats0.per_ecosystem.end() ? 0 : it0->second.cve_backed_findings;
    const long long cvef1 = it1 == stats1.per_ecosystem.end() ? 0 : it1->second.cve_backed_findings;
    const long long cves0 = it0 == stats0.per_ecosystem.end() ? 0 : it0->second.distinct_cves;
    const long long cves1 = it1 == stats1.per_ecosystem.end() ? 0 : it1->second.distinct_cves;
    delta.delta_cve_findings = cvef1 - cvef0;
    delta.delta_distinct_cves = cves1 - cves0;
    diff.per_ecosystem[eco] = delta;
  }

  diff.total.removed = static_cast<long long>(diff.removed.size());
  diff.total.added = static_cast<long long>(diff.added.size());
  diff.total.delta_cve_findings =
      stats1.total.cve_backed_findings - stats0.total.cve_backed_findings;
  // The TOTAL row reports globally deduplicated CVE identifiers.
  diff.total.delta_distinct_cves = stats1.global_distinct_cves - stats0.global_distinct_cves;
  return diff;
}

EvaluationDiff diff_evaluations(const EvaluationReport& e0, const EvaluationReport& e1) {
  if (e0.rows.size() != e1.rows.size())
    throw_error(ErrorKind::Usage, "evaluation diff needs the same tool set on both sides");
  for (const auto& [tool, _] : e0.rows)
    if (!e1.rows.count(tool))
      throw_error(ErrorKind::Usage,
                  "evaluation diff: tool " + to_string(tool) + " missing on one side");

  EvaluationDiff diff;
  for (const auto& [tool, rows0] : e0.rows) {
    const auto& rows1 = e1.rows.at(tool);
    auto find_row = [](const std::vector<MetricRow>& rows,
                       const std::string& scope) -> const MetricRow* {
      for (const auto& row : rows) {
        const std::string name = row.ecosystem ? to_string(*row.ecosystem) : "TOTAL";
        if (name == scope) return &row;
      }
      return nullptr;
    };

    std::vector<std::string> scopes;
    for (const auto& row : rows0)
      scopes.push_back(row.ecosystem ? to_string(*row.ecosystem) : "TOTAL");

    for (const auto& scope : scopes) {
      const MetricRow* r0 = find_row(rows0, scope);
      const MetricRow* r1 = find_row(rows1, scope);
      if (!r0 || !r1) continue;
      MetricDelta delta;
      delta.tp = r1->tp - r0->tp;
      delta.fp_gt = r1->fp_gt - r0->fp_gt;
      delta.fn = r1->fn - r0->fn;
      if (r0->recall && r1->recall) delta.recall = *r1->recall - *r0->recall;
      if (r0->overlap && r1->overlap) delta.overlap = *r1->overlap - *r0->overlap;
      diff.per_tool[tool][scope] = delta;
    }
  }
  return diff;
}

}  // namespace scabench

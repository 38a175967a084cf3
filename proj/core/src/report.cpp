#include "scabench/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace scabench {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string scope_name(const MetricRow& row) {
  return row.ecosystem ? to_string(*row.ecosystem) : "TOTAL";
}

}  // namespace

std::string format_ratio(const std::optional<double>& value) {
  return value ? fixed2(*value) : std::string();
}

std::string format_p(double p) {
  if (p < 0.001) return "<0.001";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  return buf;
}

std::string render_metrics_markdown(const EvaluationReport& report) {
  std::ostringstream out;
  out << "| Tool | Ecosystem | Components | Vulnerabilities | CVEs | TP | FP_GT | FN | Recall | Overlap |\n";
  out << "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [tool, rows] : report.rows) {
    for (const auto& row : rows) {
      out << "| " << to_string(tool) << " | " << scope_name(row) << " | " << row.components
          << " | " << row.vulnerabilities << " | " << row.cves << " | " << row.tp << " | "
          << row.fp_gt << " | " << row.fn << " | " << format_ratio(row.recall) << " | "
          << format_ratio(row.overlap) << " |\n";
    }
  }
  out << "\nRecall = TP/(TP+FN). Overlap = TP/(TP+FP_GT). FP_GT are "
         "ground-truth-relative false positives: reported findings not contained in the "
         "current ground-truth snapshot. TOTAL recall and overlap are unweighted means of "
         "the per-ecosystem values.\n";
  return out.str();
}

std::string render_metrics_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "tool,ecosystem,components,vulnerabilities,cves,tp,fp_gt,fn,recall,overlap\n";
  for (const auto& [tool, rows] : report.rows)
    for (const auto& row : rows)
      out << to_string(tool) << ',' << scope_name(row) << ',' << row.components << ','
          << row.vulnerabilities << ',' << row.cves << ',' << row.tp << ',' << row.fp_gt << ','
          << row.fn << ',' << format_ratio(row.recall) << ',' << format_ratio(row.overlap)
          << '\n';
  return out.str();
}

namespace {

void dataset_row(std::ostringstream& out, const std::string& name, const EcosystemStats& s,
                 bool markdown) {
  const char* sep = markdown ? " | " : ",";
  if (markdown) out << "| ";
  out << name << sep << s.unique_components << sep << s.osv_entries << sep
      << s.cve_backed_findings << sep << s.distinct_cves << sep << fixed2(s.comp_per_osv) << sep
      << fixed2(s.cvef_per_osv) << sep << fixed1(s.v_share) << "%" << sep << fixed1(s.c_share)
      << "%";
  if (markdown) out << " |";
  out << '\n';
}

void frequency_row(std::ostringstream& out, const std::string& name, const EcosystemStats& s,
                   bool markdown) {
  const char* sep = markdown ? " | " : ",";
  if (markdown) out << "| ";
  out << name << sep << s.component_freq.max << sep << fixed2(s.component_freq.avg) << sep
      << s.component_freq.min << sep << fixed2(s.component_freq.median) << sep
      << s.component_version_freq.max << sep << fixed2(s.component_version_freq.avg) << sep
      << s.component_version_freq.min << sep << fixed2(s.component_version_freq.median);
  if (markdown) out << " |";
  out << '\n';
}

}  // namespace

std::string render_dataset_stats_markdown(const SnapshotStats& stats) {
  std::ostringstream out;
  out << "| Eco | Comp. | OSV | CVE-F. | CVEs | Comp./OSV | CVE-F./OSV | V-Share | C-Share |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [eco, s] : stats.per_ecosystem) dataset_row(out, to_string(eco), s, true);
  dataset_row(out, "TOTAL", stats.total, true);
  out << "\nThe CVE count in the TOTAL row is the sum of the per-ecosystem CVE counts; the "
         "globally deduplicated count is "
      << stats.global_distinct_cves << ".\n";
  return out.str();
}

std::string render_dataset_stats_csv(const SnapshotStats& stats) {
  std::ostringstream out;
  out << "ecosystem,components,osv_entries,cve_backed,distinct_cves,comp_per_osv,cvef_per_osv,"
         "v_share,c_share\n";
  for (const auto& [eco, s] : stats.per_ecosystem) dataset_row(out, to_string(eco), s, false);
  dataset_row(out, "TOTAL", stats.total, false);
  return out.str();
}

std::string render_frequency_stats_markdown(const SnapshotStats& stats) {
  std::ostringstream out;
  out << "| Eco | Max-C | Avg-C | Min-C | Med-C | Max-CV | Avg-CV | Min-CV | Med-CV |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [eco, s] : stats.per_ecosystem) frequency_row(out, to_string(eco), s, true);
  frequency_row(out, "TOTAL", stats.total, true);
  out << "\nC = component frequency (entries per component); CV = component-version frequency "
         "(entries per component-version pair).\n";
  return out.str();
}

std::string render_frequency_stats_csv(const SnapshotStats& stats) {
  std::ostringstream out;
  out << "ecosystem,max_c,avg_c,min_c,med_c,max_cv,avg_cv,min_cv,med_cv\n";
  for (const auto& [eco, s] : stats.per_ecosystem) frequency_row(out, to_string(eco), s, false);
  frequency_row(out, "TOTAL", stats.total, false);
  return out.str();
}

std::string render_pairwise_markdown(const std::vector<PairwiseComparison>& table) {
  std::ostringstream out;
  out << "| Tool A | Tool B | n10 | n01 | p | p_adj |\n";
  out << "|---|---|---:|---:|---:|---:|\n";
  for (const auto& row : table)
    out << "| " << to_string(row.tool_a) << " | " << to_string(row.tool_b) << " | " << row.n10
        << " | " << row.n01 << " | " << format_p(row.p_raw) << " | " << format_p(row.p_adj)
        << " |\n";
  out << "\nn10 = instances detected by Tool A but missed by Tool B; n01 = the converse. "
         "p from the exact McNemar test; p_adj Holm-Bonferroni adjusted.\n";
  return out.str();
}

std::string render_pairwise_csv(const std::vector<PairwiseComparison>& table) {
  std::ostringstream out;
  out << "tool_a,tool_b,n10,n01,p,p_adj\n";
  for (const auto& row : table)
    out << to_string(row.tool_a) << ',' << to_string(row.tool_b) << ',' << row.n10 << ','
        << row.n01 << ',' << format_p(row.p_raw) << ',' << format_p(row.p_adj) << '\n';
  return out.str();
}

namespace {

std::string signed_ll(long long v) { return (v > 0 ? "+" : "") + std::to_string(v); }

std::string signed_ratio(const std::optional<double>& v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.3f", *v);
  return buf;
}

}  // namespace

std::string render_snapshot_diff_markdown(const SnapshotDiff& diff) {
  std::ostringstream out;
  out << "| Eco | Removed | Added | dCVE-F. | dCVEs |\n|---|---:|---:|---:|---:|\n";
  for (const auto& [eco, d] : diff.per_ecosystem)
    out << "| " << to_string(eco) << " | " << d.removed << " | " << d.added << " | "
        << signed_ll(d.delta_cve_findings) << " | " << signed_ll(d.delta_distinct_cves)
        << " |\n";
  out << "| TOTAL | " << diff.total.removed << " | " << diff.total.added << " | "
      << signed_ll(diff.total.delta_cve_findings) << " | "
      << signed_ll(diff.total.delta_distinct_cves) << " |\n";
  out << "\nRemoved = records contained in the earlier snapshot but no longer in the later "
         "one; Added = records newly contained in the later snapshot. The TOTAL dCVEs row "
         "uses globally deduplicated CVE identifiers.\n";
  return out.str();
}

std::string render_snapshot_diff_csv(const SnapshotDiff& diff) {
  std::ostringstream out;
  out << "ecosystem,removed,added,delta_cve_findings,delta_distinct_cves\n";
  for (const auto& [eco, d] : diff.per_ecosystem)
    out << to_string(eco) << ',' << d.removed << ',' << d.added << ','
        << signed_ll(d.delta_cve_findings) << ',' << signed_ll(d.delta_distinct_cves) << '\n';
  out << "TOTAL," << diff.total.removed << ',' << diff.total.added << ','
      << signed_ll(diff.total.delta_cve_findings) << ','
      << signed_ll(diff.total.delta_distinct_cves) << '\n';
  return out.str();
}

namespace {

const MetricRow* find_scope(const std::vector<MetricRow>& rows, const std::string& scope) {
  for (const auto& row : rows) {
    const std::string name = row.ecosystem ? to_string(*row.ecosystem) : "TOTAL";
    if (name == scope) return &row;
  }
  return nullptr;
}

}  // namespace

std::string render_eval_diff_markdown(const EvaluationReport& e0, const EvaluationReport& e1,
                                      const EvaluationDiff& diff) {
  std::ostringstream out;
  out << "| Tool | TP0 | TP1 | dTP | FP0 | FP1 | dFP | FN0 | FN1 | dFN | dRecall | dOverlap |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [tool, scopes] : diff.per_tool) {
    auto it = scopes.find("TOTAL");
    if (it == scopes.end()) continue;
    const MetricRow* r0 = find_scope(e0.rows.at(tool), "TOTAL");
    const MetricRow* r1 = find_scope(e1.rows.at(tool), "TOTAL");
    if (!r0 || !r1) continue;
    out << "| " << to_string(tool) << " | " << r0->tp << " | " << r1->tp << " | "
        << signed_ll(it->second.tp) << " | " << r0->fp_gt << " | " << r1->fp_gt << " | "
        << signed_ll(it->second.fp_gt) << " | " << r0->fn << " | " << r1->fn << " | "
        << signed_ll(it->second.fn) << " | " << signed_ratio(it->second.recall) << " | "
        << signed_ratio(it->second.overlap) << " |\n";
  }
  return out.str();
}

std::string render_eval_diff_csv(const EvaluationReport& e0, const EvaluationReport& e1,
                                 const EvaluationDiff& diff) {
  std::ostringstream out;
  out << "tool,tp0,tp1,delta_tp,fp0,fp1,delta_fp,fn0,fn1,delta_fn,delta_recall,delta_overlap\n";
  for (const auto& [tool, scopes] : diff.per_tool) {
    auto it = scopes.find("TOTAL");
    if (it == scopes.end()) continue;
    const MetricRow* r0 = find_scope(e0.rows.at(tool), "TOTAL");
    const MetricRow* r1 = find_scope(e1.rows.at(tool), "TOTAL");
    if (!r0 || !r1) continue;
    out << to_string(tool) << ',' << r0->tp << ',' << r1->tp << ',' << signed_ll(it->second.tp)
        << ',' << r0->fp_gt << ',' << r1->fp_gt << ',' << signed_ll(it->second.fp_gt) << ','
        << r0->fn << ',' << r1->fn << ',' << signed_ll(it->second.fn) << ','
        << signed_ratio(it->second.recall) << ',' << signed_ratio(it->second.overlap) << '\n';
  }
  return out.str();
}

std::string render_eval_diff_detailed_csv(const EvaluationReport& e0, const EvaluationReport& e1,
                                          const EvaluationDiff& diff) {
  std::ostringstream out;
  out << "tool,ecosystem,tp0,tp1,delta_tp,fp0,fp1,delta_fp,fn0,fn1,delta_fn\n";
  for (const auto& [tool, scopes] : diff.per_tool) {
    for (const auto& [scope, delta] : scopes) {
      const MetricRow* r0 = find_scope(e0.rows.at(tool), scope);
      const MetricRow* r1 = find_scope(e1.rows.at(tool), scope);
      if (!r0 || !r1) continue;
      out << to_string(tool) << ',' << scope << ',' << r0->tp << ',' << r1->tp << ','
          << signed_ll(delta.tp) << ',' << r0->fp_gt << ',' << r1->fp_gt << ','
          << signed_ll(delta.fp_gt) << ',' << r0->fn << ',' << r1->fn << ','
          << signed_ll(delta.fn) << '\n';
    }
  }
  return out.str();
}

std::string render_tool_scatter_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "tool,mean_recall,mean_overlap\n";
  for (const auto& [tool, rows] : report.rows) {
    const MetricRow* total = find_scope(rows, "TOTAL");
    if (!total) continue;
    out << to_string(tool) << ',' << format_ratio(total->recall) << ','
        << format_ratio(total->overlap) << '\n';
  }
  return out.str();
}

std::string render_significance_matrix_csv(const std::vector<PairwiseComparison>& table) {
  std::ostringstream out;
  out << "tool_a,tool_b,p_adj,significant_at_0.05\n";
  for (const auto& row : table)
    out << to_string(row.tool_a) << ',' << to_string(row.tool_b) << ',' << format_p(row.p_adj)
        << ',' << (row.p_adj < 0.05 ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace scabench

#include "scabench/evaluation.hpp"

#include <algorithm>
#include <set>

#include "scabench/errors.hpp"
#include "scabench/versions.hpp"

namespace scabench {

namespace {

bool ids_intersect(const std::set<VulnId>& a, const std::set<VulnId>& b) {
  auto it_a = a.begin();
  auto it_b = b.begin();
  while (it_a != a.end() && it_b != b.end()) {
    if (*it_a == *it_b) return true;
    if (*it_a < *it_b)
      ++it_a;
    else
      ++it_b;
  }
  return false;
}

bool versions_equal(EcosystemId eco, const VersionRef& a, const VersionRef& b) {
  if (a.raw == b.raw) return true;
  try {
    return compare(parse_version(eco, a.raw), parse_version(eco, b.raw)) ==
           std::strong_ordering::equal;
  } catch (const Error&) {
    return false;
  }
}

bool range_covers(EcosystemId eco, const std::string& range_text, const VersionRef& v) {
  try {
    const VersionRange range = parse_range(eco, range_text);
    return satisfies(parse_version(eco, v.raw), range);
  } catch (const Error&) {
    return false;  // malformed tool range never matches
  }
}

}  // namespace

MatchOutcome match(const Snapshot& gt, const std::vector<NormalizedFinding>& findings) {
  MatchOutcome outcome;
  if (!findings.empty()) outcome.tool = findings.front().tool;

  // Dedup findings on (tool, e, c, v, u) before classification.
  std::vector<NormalizedFinding> unique_findings = findings;
  std::sort(unique_findings.begin(), unique_findings.end());
  unique_findings.erase(std::unique(unique_findings.begin(), unique_findings.end()),
                        unique_findings.end());

  for (const auto& f : unique_findings) {
    if (f.component.ecosystem != f.ecosystem)
      throw_error(ErrorKind::Data, "finding component ecosystem disagrees with declared one");
  }

  // GT index by (ecosystem, component key).
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> by_component;
  for (size_t i = 0; i < gt.entries.size(); ++i)
    by_component[{to_string(gt.entries[i].ecosystem),
                  gt.entries[i].component.canonical_key()}]
        .push_back(i);

  std::vector<const NormalizedFinding*> first_match(gt.entries.size(), nullptr);
  std::vector<MatchBasis> match_basis(gt.entries.size(), MatchBasis::Exact);

  for (const auto& f : unique_findings) {
    bool matched_any = false;
    auto it = by_component.find({to_string(f.ecosystem), f.component.canonical_key()});
    if (it != by_component.end()) {
      const auto finding_ids = f.identifier_set();
      for (size_t index : it->second) {
        const GroundTruthEntry& g = gt.entries[index];
        if (!ids_intersect(identifier_set(g), finding_ids)) continue;
        bool covered = false;
        MatchBasis basis = MatchBasis::Exact;
        if (versions_equal(f.ecosystem, f.version, g.version)) {
          covered = true;
        } else if (f.basis == MatchBasis::Range && f.affected_range &&
                   range_covers(f.ecosystem, *f.affected_range, g.version)) {
          covered = true;
          basis = MatchBasis::Range;
        }
        if (covered) {
          matched_any = true;
          if (first_match[index] == nullptr) {
            first_match[index] = &f;
            match_basis[index] = basis;
          }
        }
      }
    }
    if (!matched_any) outcome.fp_gt.push_back(f);
  }

  for (size_t i = 0; i < gt.entries.size(); ++i) {
    if (first_match[i] != nullptr)
      outcome.tp.push_back({gt.entries[i], *first_match[i], match_basis[i]});
    else
      outcome.fn.push_back(gt.entries[i]);
  }
  return outcome;
}

MetricRow metrics(const Snapshot& gt, const MatchOutcome& outcome, EcosystemId scope) {
  MetricRow row;
  row.tool = outcome.tool;
  row.ecosystem = scope;

  std::set<std::string> components, cves;
  for (const auto& e : gt.entries) {
    if (e.ecosystem != scope) continue;
    ++row.vulnerabilities;
    components.insert(e.component.canonical_key());
    for (const auto& c : e.cves) cves.insert(c.value);
  }
  row.components = static_cast<long long>(components.size());
  row.cves = static_cast<long long>(cves.size());

  for (const auto& m : outcome.tp)
    if (m.entry.ecosystem == scope) ++row.tp;
  for (const auto& f : outcome.fp_gt)
    if (f.ecosystem == scope) ++row.fp_gt;
  for (const auto& e : outcome.fn)
    if (e.ecosystem == scope) ++row.fn;

  if (row.tp + row.fn > 0)
    row.recall = static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fn);
  if (row.tp + row.fp_gt > 0)
    row.overlap = static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fp_gt);
  return row;
}

std::vector<MetricRow> metrics_by_ecosystem(const Snapshot& gt, const MatchOutcome& outcome) {
  std::set<EcosystemId> present;
  for (const auto& e : gt.entries) present.insert(e.ecosystem);
  for (const auto& f : outcome.fp_gt) present.insert(f.ecosystem);

  std::vector<MetricRow> rows;
  for (EcosystemId eco : all_ecosystems())
    if (present.count(eco)) rows.push_back(metrics(gt, outcome, eco));
  return rows;
}

MetricRow aggregate_total(const std::vector<MetricRow>& rows) {
  if (rows.empty()) throw_error(ErrorKind::Usage, "TOTAL aggregation needs at least one row");
  MetricRow total;
  total.tool = rows.front().tool;
  total.ecosystem = std::nullopt;

  double recall_sum = 0.0, overlap_sum = 0.0;
  int recall_n = 0, overlap_n = 0;
  for (const auto& row : rows) {
    total.components += row.components;
    total.vulnerabilities += row.vulnerabilities;
    total.cves += row.cves;
    total.tp += row.tp;
    total.fp_gt += row.fp_gt;
    total.fn += row.fn;
    if (row.recall) {
      recall_sum += *row.recall;
      ++recall_n;
    }
    if (row.overlap) {
      overlap_sum += *row.overlap;
      ++overlap_n;
    }
  }
  if (recall_n > 0) total.recall = recall_sum / recall_n;
  if (overlap_n > 0) total.overlap = overlap_sum / overlap_n;
  return total;
}

std::vector<std::uint8_t> detection_vector(const Snapshot& gt, const MatchOutcome& outcome) {
  std::set<std::tuple<std::string, std::string, std::string, std::string>> detected;
  for (const auto& m : outcome.tp) detected.insert(m.entry.key());
  std::vector<std::uint8_t> column;
  column.reserve(gt.entries.size());
  for (const auto& e : gt.entries)
    column.push_back(detected.count(e.key()) ? std::uint8_t{1} : std::uint8_t{0});
  return column;
}

DetectionMatrix build_detection_matrix(
    const Snapshot& gt, const std::vector<ToolId>& tools,
    const std::vector<std::map<ToolId, MatchOutcome>>& outcomes_per_repeat) {
  DetectionMatrix matrix;
  matrix.tools = tools;

  for (size_t repeat = 0; repeat < outcomes_per_repeat.size(); ++repeat) {
    std::map<ToolId, std::vector<std::uint8_t>> columns;
    for (ToolId tool : tools) {
      auto it = outcomes_per_repeat[repeat].find(tool);
      if (it == outcomes_per_repeat[repeat].end())
        throw_error(ErrorKind::Usage,
                    "detection matrix missing outcome for " + to_string(tool));
      columns[tool] = detection_vector(gt, it->second);
    }
    for (size_t i = 0; i < gt.entries.size(); ++i) {
      std::vector<std::uint8_t> row;
      row.reserve(tools.size());
      for (ToolId tool : tools) row.push_back(columns[tool][i]);
      matrix.rows.push_back(std::move(row));
      const auto& e = gt.entries[i];
      matrix.instances.push_back("r" + std::to_string(repeat) + "/" + to_string(e.ecosystem) +
                                 "/" + e.component.canonical_key() + "@" + e.version.raw + "/" +
                                 e.vuln.value);
    }
  }
  return matrix;
}

void to_json(nlohmann::json& j, const MetricRow& row) {
  j = nlohmann::json{
      {"components", row.components},
      {"cves", row.cves},
      {"ecosystem", row.ecosystem ? to_string(*row.ecosystem) : "TOTAL"},
      {"fn", row.fn},
      {"fp_gt", row.fp_gt},
      {"tool", to_string(row.tool)},
      {"tp", row.tp},
      {"vulnerabilities", row.vulnerabilities},
  };
  if (row.recall) j["recall"] = *row.recall;
  if (row.overlap) j["overlap"] = *row.overlap;
}

void from_json(const nlohmann::json& j, MetricRow& row) {
  row = MetricRow{};
  row.tool = tool_from_string(j.at("tool").get<std::string>());
  const std::string eco = j.value("ecosystem", std::string("TOTAL"));
  if (eco != "TOTAL") row.ecosystem = ecosystem_from_string(eco);
  row.components = j.value("components", 0LL);
  row.vulnerabilities = j.value("vulnerabilities", 0LL);
  row.cves = j.value("cves", 0LL);
  row.tp = j.value("tp", 0LL);
  row.fp_gt = j.value("fp_gt", 0LL);
  row.fn = j.value("fn", 0LL);
  if (j.contains("recall")) row.recall = j.at("recall").get<double>();
  if (j.contains("overlap")) row.overlap = j.at("overlap").get<double>();
}

void to_json(nlohmann::json& j, const EvaluationReport& report) {
  auto tools = nlohmann::json::object();
  for (const auto& [tool, rows] : report.rows) {
    auto arr = nlohmann::json::array();
    for (const auto& row : rows) arr.push_back(row);
    tools[to_string(tool)] = arr;
  }
  j = nlohmann::json{{"snapshot_digest", report.snapshot_digest}, {"tools", tools}};
}

void from_json(const nlohmann::json& j, EvaluationReport& report) {
  report = EvaluationReport{};
  report.snapshot_digest = j.value("snapshot_digest", std::string());
  if (j.contains("tools"))
    for (const auto& [tool, rows] : j.at("tools").items()) {
      std::vector<MetricRow> parsed;
      for (const auto& row : rows) parsed.push_back(row.get<MetricRow>());
      report.rows[tool_from_string(tool)] = std::move(parsed);
    }
}

}  // namespace scabench

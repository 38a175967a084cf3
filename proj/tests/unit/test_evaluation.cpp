#include <doctest.h>

#include <random>

#include "scabench/errors.hpp"
#include "scabench/evaluation.hpp"
#include "test_support.hpp"

using namespace scabench;
using namespace scabench::test;

namespace {

std::set<std::string> tp_keys(const MatchOutcome& o) {
  std::set<std::string> out;
  for (const auto& m : o.tp) out.insert(m.entry.vuln.value + "@" + m.entry.version.raw + "/" +
                                        m.entry.component.canonical_key());
  return out;
}
std::set<std::string> fn_keys(const MatchOutcome& o) {
  std::set<std::string> out;
  for (const auto& e : o.fn)
    out.insert(e.vuln.value + "@" + e.version.raw + "/" + e.component.canonical_key());
  return out;
}
std::set<std::string> fp_keys(const MatchOutcome& o) {
  std::set<std::string> out;
  for (const auto& f : o.fp_gt)
    out.insert(f.vuln.value + "@" + f.version.raw + "/" + f.component.canonical_key());
  return out;
}

}  // namespace

TEST_CASE("basic set algebra: tp, fp_gt, fn") {
  auto gt = make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6", {"CVE-2025-24010"}),
      make_entry(EcosystemId::Npm, "esbuild", "0.9.0", "GHSA-aaaa-bbbb-cccc"),
  });
  std::vector<NormalizedFinding> findings = {
      make_finding(ToolId::Replay, EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6"),
      make_finding(ToolId::Replay, EcosystemId::Npm, "unrelated", "1.0.0", "CVE-2020-9999"),
  };
  auto outcome = match(gt, findings);
  CHECK(outcome.tp.size() == 1);
  CHECK(outcome.fp_gt.size() == 1);
  CHECK(outcome.fn.size() == 1);
  CHECK(outcome.fn.front().component.name == "esbuild");
  CHECK(outcome.tp.size() + outcome.fn.size() == gt.entries.size());
}

TEST_CASE("alias intersection credits the entry") {
  auto gt = make_snapshot({make_entry(EcosystemId::Npm, "vite", "0.1.0",
                                      "GHSA-vg6x-rcgg-rjx6", {"CVE-2025-24010"})});
  auto outcome = match(gt, {make_finding(ToolId::Snyk, EcosystemId::Npm, "vite", "0.1.0",
                                         "CVE-2025-24010")});
  CHECK(outcome.tp.size() == 1);
  CHECK(outcome.fp_gt.empty());

  // and symmetrically: finding carries the GHSA as alias of some other id
  auto outcome2 = match(gt, {make_finding(ToolId::Snyk, EcosystemId::Npm, "vite", "0.1.0",
                                          "SNYK-JS-VITE-1", {"GHSA-vg6x-rcgg-rjx6"})});
  CHECK(outcome2.tp.size() == 1);
}

TEST_CASE("range findings cover every affected entry") {
  auto gt = make_snapshot({
      make_entry(EcosystemId::Npm, "pkg", "1.4.0", "CVE-2024-1"),
      make_entry(EcosystemId::Npm, "pkg", "1.4.1", "CVE-2024-1"),
      make_entry(EcosystemId::Npm, "pkg", "1.4.2", "CVE-2024-1"),
  });
  auto outcome = match(gt, {make_finding(ToolId::Trivy, EcosystemId::Npm, "pkg", "1.4.0",
                                         "CVE-2024-1", {}, "<1.4.2")});
  CHECK(outcome.tp.size() == 2);  // 1.4.0 and 1.4.1; 1.4.2 not covered
  CHECK(outcome.fn.size() == 1);
  CHECK(outcome.fn.front().version.raw == "1.4.2");
  CHECK(outcome.fp_gt.empty());
  for (const auto& m : outcome.tp)
    if (m.entry.version.raw == "1.4.1") CHECK(m.basis == MatchBasis::Range);
}

TEST_CASE("semantically equal versions match exactly") {
  auto gt = make_snapshot(
      {make_entry(EcosystemId::NuGet, "Pkg.Name", "1.0.0", "GHSA-xxxx-yyyy-zzzz")});
  auto outcome = match(gt, {make_finding(ToolId::Dtrack, EcosystemId::NuGet, "pkg.name",
                                         "1.0.0.0", "GHSA-xxxx-yyyy-zzzz")});
  CHECK(outcome.tp.size() == 1);
}

TEST_CASE("duplicated findings never double-count fp") {
  auto gt = make_snapshot({make_entry(EcosystemId::Npm, "a", "1.0.0", "CVE-1-1")});
  auto f = make_finding(ToolId::Snyk, EcosystemId::Npm, "zzz", "2.0.0", "CVE-2024-7777");
  auto outcome = match(gt, {f, f, f});
  CHECK(outcome.fp_gt.size() == 1);
}

TEST_CASE("randomized instances equal the brute-force oracle") {
  std::mt19937 rng(20250328);
  std::uniform_int_distribution<int> count_gt(0, 30), count_f(0, 40), coin(0, 1), small(0, 5);

  for (int round = 0; round < 200; ++round) {
    std::vector<GroundTruthEntry> entries;
    const int n = count_gt(rng);
    for (int i = 0; i < n; ++i) {
      EcosystemId eco = all_ecosystems()[rng() % 4];
      std::string comp = (eco == EcosystemId::Maven ? "g:a" : "pkg") + std::to_string(small(rng));
      std::string version = "1." + std::to_string(small(rng)) + ".0";
      std::string vuln = "GHSA-id-" + std::to_string(small(rng) * 3 + (rng() % 3));
      std::vector<std::string> aliases;
      if (coin(rng)) aliases.push_back("CVE-2026-" + std::to_string(1000 + small(rng)));
      entries.push_back(make_entry(eco, comp, version, vuln, aliases));
    }
    auto gt = make_snapshot(std::move(entries));

    std::vector<NormalizedFinding> findings;
    const int m = count_f(rng);
    for (int i = 0; i < m; ++i) {
      EcosystemId eco = all_ecosystems()[rng() % 4];
      std::string comp = (eco == EcosystemId::Maven ? "g:a" : "pkg") + std::to_string(small(rng));
      std::string version = "1." + std::to_string(small(rng)) + ".0";
      std::string vuln = coin(rng) ? "GHSA-id-" + std::to_string(small(rng) * 3 + (rng() % 3))
                                   : "CVE-2026-" + std::to_string(1000 + small(rng));
      std::string range;
      if (coin(rng) && coin(rng)) range = "<1." + std::to_string(small(rng)) + ".1";
      findings.push_back(make_finding(ToolId::Replay, eco, comp, version, vuln, {}, range));
    }

    auto fast = match(gt, findings);
    auto slow = brute_force_match(gt, findings);
    CHECK(tp_keys(fast) == tp_keys(slow));
    CHECK(fn_keys(fast) == fn_keys(slow));
    CHECK(fp_keys(fast) == fp_keys(slow));
    CHECK(fast.tp.size() + fast.fn.size() == gt.entries.size());
  }
}

TEST_CASE("metric rows follow the published definitions") {
  // snyk Maven row shape: tp=204 fp=314 fn=46 -> recall 0.8160, overlap 0.39
  MetricRow row;
  row.tp = 204;
  row.fp_gt = 314;
  row.fn = 46;
  row.recall = static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fn);
  row.overlap = static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fp_gt);
  CHECK(*row.recall == doctest::Approx(0.816).epsilon(1e-9));
  CHECK(*row.overlap == doctest::Approx(0.3938).epsilon(1e-3));

  // zero denominators stay absent
  auto gt = make_snapshot({});
  MatchOutcome empty;
  empty.tool = ToolId::Snyk;
  auto metrics_row = metrics(gt, empty, EcosystemId::Npm);
  CHECK_FALSE(metrics_row.recall.has_value());
  CHECK_FALSE(metrics_row.overlap.has_value());
}

TEST_CASE("macro TOTAL aggregation reproduces the published totals") {
  auto mk = [](ToolId tool, EcosystemId eco, long long tp, long long fp, long long fn) {
    MetricRow row;
    row.tool = tool;
    row.ecosystem = eco;
    row.tp = tp;
    row.fp_gt = fp;
    row.fn = fn;
    if (tp + fn > 0) row.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (tp + fp > 0) row.overlap = static_cast<double>(tp) / static_cast<double>(tp + fp);
    return row;
  };

  // github: overlap macro-mean 0.54 although pooled gives 0.50
  std::vector<MetricRow> github = {
      mk(ToolId::Github, EcosystemId::Maven, 233, 375, 17),
      mk(ToolId::Github, EcosystemId::Npm, 250, 133, 0),
      mk(ToolId::Github, EcosystemId::NuGet, 250, 103, 0),
      mk(ToolId::Github, EcosystemId::PyPI, 215, 320, 35),
  };
  auto total = aggregate_total(github);
  CHECK(total.tp == 948);
  CHECK(total.fp_gt == 931);
  CHECK(total.fn == 52);
  CHECK(*total.overlap == doctest::Approx(0.54).epsilon(0.01));
  CHECK(*total.recall == doctest::Approx(0.95).epsilon(0.01));
  const double pooled = 948.0 / (948.0 + 931.0);
  CHECK(std::fabs(*total.overlap - pooled) > 0.02);  // macro differs from pooled

  // dtrack: balanced ecosystems make macro recall equal pooled recall
  std::vector<MetricRow> dtrack = {
      mk(ToolId::Dtrack, EcosystemId::Maven, 250, 193, 0),
      mk(ToolId::Dtrack, EcosystemId::Npm, 250, 40, 0),
      mk(ToolId::Dtrack, EcosystemId::NuGet, 235, 0, 15),
      mk(ToolId::Dtrack, EcosystemId::PyPI, 172, 89, 78),
  };
  auto dtrack_total = aggregate_total(dtrack);
  CHECK(*dtrack_total.recall == doctest::Approx(907.0 / 1000.0).epsilon(1e-9));

  // single row: TOTAL equals the row
  auto single = aggregate_total({github[0]});
  CHECK(single.tp == github[0].tp);
  CHECK(*single.overlap == doctest::Approx(*github[0].overlap));
}

TEST_CASE("macro recall equals pooled recall under balanced ecosystems") {
  std::mt19937 rng(606);
  for (int round = 0; round < 200; ++round) {
    const long long per_eco = 50;
    std::vector<MetricRow> rows;
    long long tp_sum = 0;
    for (EcosystemId eco : all_ecosystems()) {
      MetricRow row;
      row.ecosystem = eco;
      row.tp = static_cast<long long>(rng() % (per_eco + 1));
      row.fn = per_eco - row.tp;
      tp_sum += row.tp;
      row.recall = static_cast<double>(row.tp) / static_cast<double>(per_eco);
      rows.push_back(row);
    }
    auto total = aggregate_total(rows);
    CHECK(*total.recall ==
          doctest::Approx(static_cast<double>(tp_sum) / (4.0 * per_eco)).epsilon(1e-12));
  }
}

TEST_CASE("detection vectors line up with the snapshot order") {
  auto gt = make_snapshot({
      make_entry(EcosystemId::Npm, "a", "1.0.0", "CVE-1-1"),
      make_entry(EcosystemId::Npm, "b", "1.0.0", "CVE-1-2"),
      make_entry(EcosystemId::Npm, "c", "1.0.0", "CVE-1-3"),
  });
  auto outcome = match(gt, {make_finding(ToolId::Snyk, EcosystemId::Npm, "b", "1.0.0", "CVE-1-2")});
  auto column = detection_vector(gt, outcome);
  REQUIRE(column.size() == 3);
  long long total = 0;
  for (auto bit : column) total += bit;
  CHECK(total == static_cast<long long>(outcome.tp.size()));

  // all-tp outcome -> all ones
  std::vector<NormalizedFinding> all;
  for (const auto& e : gt.entries)
    all.push_back(make_finding(ToolId::Snyk, e.ecosystem, e.component.coordinate(),
                               e.version.raw, e.vuln.value));
  auto full = detection_vector(gt, match(gt, all));
  for (auto bit : full) CHECK(bit == 1);
}

TEST_CASE("concatenated repeats double the column totals") {
  auto gt = make_snapshot({
      make_entry(EcosystemId::Npm, "a", "1.0.0", "CVE-1-1"),
      make_entry(EcosystemId::Npm, "b", "1.0.0", "CVE-1-2"),
  });
  auto outcome = match(gt, {make_finding(ToolId::Snyk, EcosystemId::Npm, "a", "1.0.0", "CVE-1-1")});
  outcome.tool = ToolId::Snyk;
  std::map<ToolId, MatchOutcome> per_tool{{ToolId::Snyk, outcome}};
  auto matrix = build_detection_matrix(gt, {ToolId::Snyk}, {per_tool, per_tool});
  CHECK(matrix.rows.size() == 4);  // R * |GT|
  CHECK(matrix.column_total(0) == 2);
}

TEST_CASE("ecosystem mismatch inside a finding is a data error") {
  auto gt = make_snapshot({make_entry(EcosystemId::Npm, "a", "1.0.0", "CVE-1-1")});
  auto f = make_finding(ToolId::Snyk, EcosystemId::Npm, "a", "1.0.0", "CVE-1-1");
  f.ecosystem = EcosystemId::PyPI;  // declared ecosystem now disagrees with the component
  CHECK_THROWS_AS((void)match(gt, {f}), Error);
}

#include <doctest.h>

#include "scabench/diff.hpp"
#include "scabench/errors.hpp"
#include "test_support.hpp"

using namespace scabench;
using namespace scabench::test;

TEST_CASE("diffing a snapshot with itself is empty") {
  auto s = make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6", {"CVE-2025-24010"}),
      make_entry(EcosystemId::PyPI, "tornado", "6.5.4", "GHSA-fqwm-6jpj-5wxc"),
  });
  auto diff = diff_snapshots(s, s);
  CHECK(diff.removed.empty());
  CHECK(diff.added.empty());
  CHECK(diff.total.delta_cve_findings == 0);
  CHECK(diff.total.delta_distinct_cves == 0);
}

TEST_CASE("diff is anti-symmetric") {
  auto s0 = make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6", {"CVE-2025-24010"}),
      make_entry(EcosystemId::Npm, "esbuild", "0.9.0", "GHSA-aaaa-bbbb-cccc"),
  });
  auto s1 = make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-4w7w-66w2-5vf9", {"CVE-2026-39365"}),
      make_entry(EcosystemId::Npm, "esbuild", "0.9.0", "GHSA-aaaa-bbbb-cccc"),
  });
  auto forward = diff_snapshots(s0, s1);
  auto backward = diff_snapshots(s1, s0);
  CHECK(forward.removed == backward.added);
  CHECK(forward.added == backward.removed);
  CHECK(forward.total.delta_cve_findings == -backward.total.delta_cve_findings);
  CHECK(forward.total.delta_distinct_cves == -backward.total.delta_distinct_cves);

  // advisory replacement on the same coordinate: one removed + one added
  CHECK(forward.removed.size() == 1);
  CHECK(forward.added.size() == 1);
  CHECK(forward.removed.front().vuln.value == "GHSA-vg6x-rcgg-rjx6");
  CHECK(forward.added.front().vuln.value == "GHSA-4w7w-66w2-5vf9");
}

TEST_CASE("evaluation diff: identical reports give all-zero deltas") {
  EvaluationReport report;
  report.snapshot_digest = "d";
  MetricRow row;
  row.tool = ToolId::OssIndex;
  row.ecosystem = EcosystemId::Npm;
  row.tp = 79;
  row.fp_gt = 1;
  row.fn = 171;
  row.recall = 79.0 / 250.0;
  row.overlap = 79.0 / 80.0;
  MetricRow total = row;
  total.ecosystem = std::nullopt;
  report.rows[ToolId::OssIndex] = {row, total};

  auto diff = diff_evaluations(report, report);
  for (const auto& [tool, scopes] : diff.per_tool)
    for (const auto& [scope, delta] : scopes) {
      CHECK(delta.tp == 0);
      CHECK(delta.fp_gt == 0);
      CHECK(delta.fn == 0);
    }
}

TEST_CASE("evaluation diff rejects mismatched tool sets") {
  EvaluationReport e0, e1;
  MetricRow row;
  row.tool = ToolId::Snyk;
  e0.rows[ToolId::Snyk] = {row};
  e1.rows[ToolId::Trivy] = {row};
  CHECK_THROWS_AS((void)diff_evaluations(e0, e1), Error);
}

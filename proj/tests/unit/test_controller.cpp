#include <doctest.h>

#include "scabench/controller.hpp"
#include "scabench/errors.hpp"
#include "test_support.hpp"

using namespace scabench;
using namespace scabench::test;

namespace {

Snapshot snapshot_a() {
  return make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6", {"CVE-2025-24010"}),
      make_entry(EcosystemId::Npm, "esbuild", "0.9.0", "GHSA-aaaa-bbbb-cccc"),
  });
}

Snapshot snapshot_b() {  // one advisory swapped: the drift scenario
  return make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-4w7w-66w2-5vf9", {"CVE-2026-39365"}),
      make_entry(EcosystemId::Npm, "esbuild", "0.9.0", "GHSA-aaaa-bbbb-cccc"),
  });
}

ToolRunResult perfect_result(ToolId tool, const Snapshot& gt) {
  ToolRunResult result;
  result.tool = tool;
  for (const auto& e : gt.entries)
    result.findings.push_back(make_finding(tool, e.ecosystem, e.component.coordinate(),
                                           e.version.raw, e.vuln.value));
  for (auto& f : result.findings) f.tool = tool;
  result.raw_count = result.normalized_count =
      static_cast<long long>(result.findings.size());
  result.result_hash = hash_findings(result.findings);
  return result;
}

ControllerConfig two_tool_config(int attempts_max = 3, int repeats = 2) {
  ControllerConfig cfg;
  cfg.tools = {ToolId::Dtrack, ToolId::Snyk};
  cfg.attempts_max = attempts_max;
  cfg.repeats = repeats;
  return cfg;
}

}  // namespace

TEST_CASE("frozen data accepts on the first attempt with equal repeat hashes") {
  auto cfg = two_tool_config();
  ControllerEnv env;
  env.build_gt = [] { return snapshot_a(); };
  env.run_tool = [](ToolId tool, const Snapshot& gt, const SbomDocument&, int) {
    return perfect_result(tool, gt);
  };

  auto run = run_controlled(cfg, env);
  REQUIRE(run.attempts.size() == 1);
  CHECK(run.attempts[0].status == "accepted");
  CHECK(run.attempts[0].gt_before == run.attempts[0].gt_after);
  CHECK_FALSE(run.repeat_divergence);
  for (const auto& [tool, hashes] : run.attempts[0].repeat_hashes) {
    REQUIRE(hashes.size() == 2);
    CHECK(hashes[0] == hashes[1]);
  }
  CHECK(run.matrix.rows.size() == 2 * run.snapshot.entries.size());
  CHECK(run.report.rows.at(ToolId::Dtrack).back().tp == 2);
  CHECK(run.omnibus.q_statistic == 0.0);  // identical perfect columns
  CHECK(run.pairwise.size() == 1);
}

TEST_CASE("one scripted drift costs exactly one attempt") {
  auto cfg = two_tool_config();
  int builds = 0;
  ControllerEnv env;
  // Build 1 sees the old state, every later build the re-frozen new one.
  env.build_gt = [&builds] { return ++builds == 1 ? snapshot_a() : snapshot_b(); };
  env.run_tool = [](ToolId tool, const Snapshot& gt, const SbomDocument&, int) {
    return perfect_result(tool, gt);
  };

  auto run = run_controlled(cfg, env);
  REQUIRE(run.attempts.size() == 2);
  CHECK(run.attempts[0].status == "failed-drift");
  CHECK(run.attempts[0].gt_before != run.attempts[0].gt_after);
  CHECK(run.attempts[1].status == "accepted");
  CHECK(run.snapshot.digest == snapshot_b().digest);
  CHECK(builds == 4);  // two builds per attempt
}

TEST_CASE("persistent drift aborts after attempts_max") {
  auto cfg = two_tool_config(3);
  int builds = 0;
  ControllerEnv env;
  env.build_gt = [&builds] { return ++builds % 2 == 1 ? snapshot_a() : snapshot_b(); };
  env.run_tool = [](ToolId tool, const Snapshot& gt, const SbomDocument&, int) {
    return perfect_result(tool, gt);
  };

  CHECK_THROWS_AS((void)run_controlled(cfg, env), Error);
  try {
    builds = 0;
    (void)run_controlled(cfg, env);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Abort);
  }
  CHECK(builds == 2 * 3);  // never more than attempts_max attempts
}

TEST_CASE("an execution failure discards the attempt, then recovery accepts") {
  auto cfg = two_tool_config();
  int invocations = 0;
  ControllerEnv env;
  env.build_gt = [] { return snapshot_a(); };
  env.run_tool = [&invocations](ToolId tool, const Snapshot& gt, const SbomDocument&, int) {
    if (++invocations == 1) throw_error(ErrorKind::Run, "injected fault");
    return perfect_result(tool, gt);
  };

  auto run = run_controlled(cfg, env);
  REQUIRE(run.attempts.size() == 2);
  CHECK(run.attempts[0].status == "failed-execution");
  CHECK(run.attempts[0].error.find("injected fault") != std::string::npos);
  CHECK(run.attempts[1].status == "accepted");
}

TEST_CASE("repeat divergence warns and records, never rejects") {
  auto cfg = two_tool_config();
  int calls = 0;
  std::vector<std::string> warnings;
  ControllerEnv env;
  env.build_gt = [] { return snapshot_a(); };
  env.warn = [&warnings](const std::string& w) { warnings.push_back(w); };
  env.run_tool = [&calls](ToolId tool, const Snapshot& gt, const SbomDocument&, int repeat) {
    ++calls;
    auto result = perfect_result(tool, gt);
    if (tool == ToolId::Snyk && repeat == 1) {
      result.findings.pop_back();  // second repeat differs
      result.result_hash = hash_findings(result.findings);
    }
    return result;
  };

  auto run = run_controlled(cfg, env);
  CHECK(run.attempts.back().status == "accepted");
  CHECK(run.repeat_divergence);
  CHECK_FALSE(warnings.empty());
  CHECK(calls == 4);
}

TEST_CASE("detection matrix concatenates all repeats") {
  auto cfg = two_tool_config(3, 3);
  ControllerEnv env;
  env.build_gt = [] { return snapshot_a(); };
  env.run_tool = [](ToolId tool, const Snapshot& gt, const SbomDocument&, int) {
    auto result = perfect_result(tool, gt);
    if (tool == ToolId::Snyk) {
      result.findings.pop_back();
      result.result_hash = hash_findings(result.findings);
    }
    return result;
  };

  auto run = run_controlled(cfg, env);
  CHECK(run.matrix.rows.size() == 3 * run.snapshot.entries.size());
  // column totals: dtrack detects everything, snyk misses one per repeat
  CHECK(run.matrix.column_total(0) == 3 * 2);
  CHECK(run.matrix.column_total(1) == 3 * 1);
  REQUIRE(run.pairwise.size() == 1);
  CHECK(run.pairwise[0].n10 == 3);
  CHECK(run.pairwise[0].n01 == 0);
}

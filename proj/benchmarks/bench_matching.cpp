#include <benchmark/benchmark.h>

#include <random>

#include "scabench/evaluation.hpp"

using namespace scabench;

namespace {

Snapshot synthetic_snapshot(int entries_per_eco) {
  std::vector<GroundTruthEntry> entries;
  for (EcosystemId eco : all_ecosystems()) {
    for (int i = 0; i < entries_per_eco; ++i) {
      GroundTruthEntry e;
      e.ecosystem = eco;
      std::string name = "pkg-" + std::to_string(i % 40);
      if (eco == EcosystemId::Maven) name = "org.example:" + name;
      e.component = canonicalize_component(eco, name);
      e.version.raw = "1." + std::to_string(i % 10) + ".0";
      e.vuln = VulnId("GHSA-bench-" + std::to_string(i));
      e.cves.insert(VulnId("CVE-2026-" + std::to_string(10000 + i % 60)));
      e.aliases = e.cves;
      entries.push_back(std::move(e));
    }
  }
  Snapshot s;
  s.entries = std::move(entries);
  finalize_snapshot(s);
  return s;
}

std::vector<NormalizedFinding> synthetic_findings(const Snapshot& gt, double hit_rate) {
  std::mt19937 rng(1234);
  std::vector<NormalizedFinding> findings;
  for (const auto& e : gt.entries) {
    if (std::uniform_real_distribution<>(0, 1)(rng) > hit_rate) continue;
    NormalizedFinding f;
    f.tool = ToolId::Replay;
    f.ecosystem = e.ecosystem;
    f.component = e.component;
    f.version = e.version;
    f.vuln = e.vuln;
    findings.push_back(std::move(f));
  }
  for (int i = 0; i < 100; ++i) {
    NormalizedFinding f;
    f.tool = ToolId::Replay;
    f.ecosystem = EcosystemId::Npm;
    f.component = canonicalize_component(EcosystemId::Npm, "noise-" + std::to_string(i));
    f.version.raw = "1.0.0";
    f.vuln = VulnId("CVE-2031-" + std::to_string(i));
    findings.push_back(std::move(f));
  }
  return findings;
}

void BM_Match(benchmark::State& state) {
  const auto gt = synthetic_snapshot(static_cast<int>(state.range(0)));
  const auto findings = synthetic_findings(gt, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(match(gt, findings));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(gt.entries.size() + findings.size()));
}
BENCHMARK(BM_Match)->Arg(50)->Arg(250)->Unit(benchmark::kMicrosecond);

void BM_HashSnapshot(benchmark::State& state) {
  const auto gt = synthetic_snapshot(250);
  for (auto _ : state) benchmark::DoNotOptimize(hash_entries(gt.entries));
}
BENCHMARK(BM_HashSnapshot)->Unit(benchmark::kMicrosecond);

}  // namespace

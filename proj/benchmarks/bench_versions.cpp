#include <benchmark/benchmark.h>

#include <random>

#include "scabench/versions.hpp"

using namespace scabench;

namespace {

std::vector<std::string> sample_versions(EcosystemId eco) {
  switch (eco) {
    case EcosystemId::Npm:
      return {"1.0.0", "2.13.4", "0.0.1", "4.17.21", "1.4.0-alpha.1", "5.0.0-rc.2+build.7",
              "10.2.33", "3.0.0-beta"};
    case EcosystemId::PyPI:
      return {"2.31.0", "1.0", "6.5b1", "1!2.0.post1", "4.0.0.dev3", "1.0.0rc1",
              "0.9.8.1", "3.2+local.5"};
    case EcosystemId::Maven:
      return {"5.3.0", "1.0-SNAPSHOT", "2.0.1-rc-1", "3.2.1.Final", "1.0-alpha-2",
              "9.4.53.v20231009", "2.14.1", "1.0-sp2"};
    case EcosystemId::NuGet:
      return {"5.1.0", "1.0.0.0", "2.1.0-preview1", "4.8.6", "13.0.3", "1.1.1-BETA",
              "6.0.0+metadata", "3.1.32"};
  }
  return {};
}

void BM_ParseVersion(benchmark::State& state) {
  const auto eco = static_cast<EcosystemId>(state.range(0));
  const auto versions = sample_versions(eco);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_version(eco, versions[i % versions.size()]));
    ++i;
  }
}
BENCHMARK(BM_ParseVersion)->DenseRange(0, 3)->Unit(benchmark::kNanosecond);

void BM_CompareVersions(benchmark::State& state) {
  const auto eco = static_cast<EcosystemId>(state.range(0));
  std::vector<ParsedVersion> parsed;
  for (const auto& s : sample_versions(eco)) parsed.push_back(parse_version(eco, s));
  size_t i = 0;
  for (auto _ : state) {
    const auto& a = parsed[i % parsed.size()];
    const auto& b = parsed[(i + 3) % parsed.size()];
    benchmark::DoNotOptimize(compare(a, b));
    ++i;
  }
}
BENCHMARK(BM_CompareVersions)->DenseRange(0, 3)->Unit(benchmark::kNanosecond);

void BM_RangeSatisfies(benchmark::State& state) {
  const auto range = parse_range(EcosystemId::Npm, ">=1.2.0, <4.17.22");
  const auto version = parse_version(EcosystemId::Npm, "4.17.21");
  for (auto _ : state) benchmark::DoNotOptimize(satisfies(version, range));
}
BENCHMARK(BM_RangeSatisfies)->Unit(benchmark::kNanosecond);

}  // namespace

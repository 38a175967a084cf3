#include <doctest.h>

#include "scabench/builder.hpp"
#include "scabench/config.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/sbom.hpp"
#include "test_support.hpp"

using namespace scabench;

namespace {

const std::filesystem::path kFixtures{TEST_FIXTURES_DIR};

RunConfigFile corpus_config() {
  auto cfg = load_run_config(kFixtures / "corpus_config.json");
  cfg.fixture_dir = kFixtures / "osv_corpus";
  return cfg;
}

Snapshot build_from_corpus() {
  auto cfg = corpus_config();
  TransportOptions options;
  options.mode = TransportMode::Replay;
  options.fixture_dir = cfg.fixture_dir;
  HttpTransport transport(options);
  OsvClient osv(transport);
  RegistryClient registry(transport);
  return build_snapshot(cfg.build, osv, registry);
}

}  // namespace

TEST_CASE("corpus build reproduces the golden entry set and digest") {
  auto snapshot = build_from_corpus();

  const std::string want_digest = [] {
    auto text = read_file(kFixtures / "golden" / "corpus_digest.txt");
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
  }();
  CHECK(snapshot.digest == want_digest);

  auto golden_rows = read_jsonl_file(kFixtures / "golden" / "corpus_entries.jsonl");
  REQUIRE(snapshot.entries.size() == golden_rows.size());
  for (size_t i = 0; i < golden_rows.size(); ++i) {
    auto want = golden_rows[i].get<GroundTruthEntry>();
    CAPTURE(i);
    CHECK(snapshot.entries[i] == want);
    CHECK(snapshot.entries[i].aliases == want.aliases);
    CHECK(snapshot.entries[i].cves == want.cves);
  }
}

TEST_CASE("corpus build is deterministic across repeated runs") {
  auto first = build_from_corpus();
  auto second = build_from_corpus();
  CHECK(first.digest == second.digest);
  CHECK(first.entries == second.entries);
}

TEST_CASE("corpus SBOM matches the golden document byte for byte") {
  auto snapshot = build_from_corpus();
  auto sbom = emit_sbom(snapshot);
  CHECK(sbom.bytes == read_file(kFixtures / "golden" / "corpus_sbom.cdx.json"));
}

TEST_CASE("empty component lists produce an empty snapshot") {
  BuildConfig cfg;
  TransportOptions options;
  options.mode = TransportMode::Replay;
  options.fixture_dir = kFixtures / "osv_corpus";
  HttpTransport transport(options);
  OsvClient osv(transport);
  RegistryClient registry(transport);
  auto snapshot = build_snapshot(cfg, osv, registry);
  CHECK(snapshot.entries.empty());
  CHECK(snapshot.stats.total.osv_entries == 0);
  CHECK_FALSE(snapshot.digest.empty());
}

TEST_CASE("per-ecosystem target caps collection") {
  auto cfg = corpus_config();
  cfg.build.target_entries = 2;
  TransportOptions options;
  options.mode = TransportMode::Replay;
  options.fixture_dir = cfg.fixture_dir;
  HttpTransport transport(options);
  OsvClient osv(transport);
  RegistryClient registry(transport);
  auto snapshot = build_snapshot(cfg.build, osv, registry);
  std::map<EcosystemId, long long> counts;
  for (const auto& e : snapshot.entries) counts[e.ecosystem]++;
  for (const auto& [eco, n] : counts) CHECK(n <= 2);
  CHECK(counts.at(EcosystemId::Npm) == 2);
  CHECK(counts.at(EcosystemId::NuGet) == 2);
}

TEST_CASE("per-version advisory cap admits a deterministic subset") {
  auto cfg = corpus_config();
  cfg.build.per_version_advisory_cap = 1;
  TransportOptions options;
  options.mode = TransportMode::Replay;
  options.fixture_dir = cfg.fixture_dir;
  HttpTransport transport(options);
  OsvClient osv(transport);
  RegistryClient registry(transport);
  auto snapshot = build_snapshot(cfg.build, osv, registry);

  // vite 4.5.0 carries two advisories; the cap keeps the id-sorted first.
  int vite_450 = 0;
  for (const auto& e : snapshot.entries)
    if (e.component.name == "vite" && e.version.raw == "4.5.0") {
      ++vite_450;
      CHECK(e.vuln.value == "GHSA-92r3-m2mg-pj97");
    }
  CHECK(vite_450 == 1);
}

TEST_CASE("a replay miss aborts the whole build") {
  auto cfg = corpus_config();
  cfg.build.components[EcosystemId::Npm].push_back("not-in-fixtures");
  TransportOptions options;
  options.mode = TransportMode::Replay;
  options.fixture_dir = cfg.fixture_dir;
  HttpTransport transport(options);
  OsvClient osv(transport);
  RegistryClient registry(transport);
  CHECK_THROWS_AS((void)build_snapshot(cfg.build, osv, registry), Error);
}

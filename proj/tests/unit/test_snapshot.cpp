#include <doctest.h>

#include <algorithm>
#include <random>

#include "scabench/builder.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/snapshot.hpp"
#include "test_support.hpp"

using namespace scabench;
using namespace scabench::test;

TEST_CASE("digest is insertion-order independent and content sensitive") {
  auto e1 = make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6",
                       {"CVE-2025-24010"});
  auto e2 = make_entry(EcosystemId::PyPI, "tornado", "6.5.4", "GHSA-fqwm-6jpj-5wxc",
                       {"CVE-2026-35536"});
  const std::string d12 = hash_entries({e1, e2});
  const std::string d21 = hash_entries({e2, e1});
  CHECK(d12 == d21);
  CHECK(hash_entries({e1}) != d12);

  // retrieved_at never contributes
  auto e1b = e1;
  e1b.retrieved_at = "2099-01-01T00:00:00Z";
  CHECK(hash_entries({e1b, e2}) == d12);
}

TEST_CASE("two-entry fixture digest is frozen") {
  auto e1 = make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6",
                       {"CVE-2025-24010"});
  auto e2 = make_entry(EcosystemId::PyPI, "tornado", "6.5.4", "GHSA-fqwm-6jpj-5wxc",
                       {"CVE-2026-35536"});
  // Computed once from the canonical byte stream (sorted entries, sorted-key
  // JSON lines) and pinned; any serialization change must be deliberate.
  CHECK(hash_entries({e1, e2}) ==
        "b559c8388bb1c7aabdcf59b3a53e082d2508047da48f11642e3f24a6a8cd6572");
}

TEST_CASE("snapshot save/load round-trip keeps digest") {
  auto snapshot = make_snapshot({
      make_entry(EcosystemId::Npm, "vite", "0.1.0", "GHSA-vg6x-rcgg-rjx6", {"CVE-2025-24010"}),
      make_entry(EcosystemId::NuGet, "Pkg.One", "1.0.0", "GHSA-aaaa-bbbb-cccc"),
  });
  const auto dir = std::filesystem::temp_directory_path() / "scabench-test-snapshot";
  std::filesystem::remove_all(dir);
  save_snapshot(snapshot, dir);
  auto loaded = load_snapshot(dir);
  CHECK(loaded.digest == snapshot.digest);
  CHECK(loaded.entries.size() == snapshot.entries.size());
  CHECK(loaded.entries == snapshot.entries);

  // duplicate insertion collapses
  auto duplicated = snapshot;
  duplicated.entries.push_back(snapshot.entries.front());
  finalize_snapshot(duplicated);
  CHECK(duplicated.entries.size() == snapshot.entries.size());
  CHECK(duplicated.digest == snapshot.digest);
}

TEST_CASE("stats reproduce the published dataset ratios") {
  auto snapshot = shaped_snapshot({
      {EcosystemId::Maven, 99, 250, 240, 42},
      {EcosystemId::Npm, 66, 250, 231, 19},
      {EcosystemId::NuGet, 189, 250, 250, 36},
      {EcosystemId::PyPI, 76, 250, 203, 92},
  });
  const auto& stats = snapshot.stats;

  CHECK(stats.per_ecosystem.at(EcosystemId::Maven).comp_per_osv ==
        doctest::Approx(0.40).epsilon(0.0125));
  CHECK(stats.per_ecosystem.at(EcosystemId::Maven).cvef_per_osv ==
        doctest::Approx(0.96).epsilon(1e-9));
  CHECK(stats.per_ecosystem.at(EcosystemId::Npm).comp_per_osv ==
        doctest::Approx(0.264).epsilon(1e-9));
  CHECK(stats.per_ecosystem.at(EcosystemId::NuGet).cvef_per_osv ==
        doctest::Approx(1.00).epsilon(1e-9));
  CHECK(stats.per_ecosystem.at(EcosystemId::PyPI).cvef_per_osv ==
        doctest::Approx(0.812).epsilon(1e-9));
  CHECK(stats.per_ecosystem.at(EcosystemId::PyPI).distinct_cves == 92);

  // every ecosystem hits exactly 25% of entries
  for (const auto& [eco, s] : stats.per_ecosystem)
    CHECK(s.v_share == doctest::Approx(25.0).epsilon(1e-9));

  CHECK(stats.total.unique_components == 430);
  CHECK(stats.total.osv_entries == 1000);
  CHECK(stats.total.cve_backed_findings == 924);
  CHECK(stats.total.distinct_cves == 189);  // per-ecosystem sum convention
  CHECK(stats.total.comp_per_osv == doctest::Approx(0.43).epsilon(1e-9));
  CHECK(stats.total.cvef_per_osv == doctest::Approx(0.924).epsilon(1e-9));

  // c-shares add up to 100
  double c_share_sum = 0;
  for (const auto& [eco, s] : stats.per_ecosystem) c_share_sum += s.c_share;
  CHECK(c_share_sum == doctest::Approx(100.0).epsilon(1e-3));
}

TEST_CASE("global distinct CVEs deduplicate across ecosystems") {
  auto snapshot = make_snapshot({
      make_entry(EcosystemId::Npm, "a", "1.0.0", "GHSA-1111-1111-1111", {"CVE-2023-4863"}),
      make_entry(EcosystemId::PyPI, "pillow", "9.5.0", "GHSA-j7hp-h8jx-5ppr",
                 {"CVE-2023-4863"}),
      make_entry(EcosystemId::PyPI, "pillow", "9.4.0", "GHSA-3f63-hfp8-52jq",
                 {"CVE-2023-50447"}),
  });
  CHECK(snapshot.stats.total.distinct_cves == 3);  // 1 + 2 per-ecosystem sum
  CHECK(snapshot.stats.global_distinct_cves == 2);
}

TEST_CASE("empty snapshot yields zeroed stats") {
  auto stats = compute_stats({});
  CHECK(stats.per_ecosystem.empty());
  CHECK(stats.total.osv_entries == 0);
  CHECK(stats.total.comp_per_osv == 0.0);
  CHECK(stats.global_distinct_cves == 0);
}

TEST_CASE("frequency stats: max, avg, min, median") {
  auto snapshot = make_snapshot({
      make_entry(EcosystemId::Npm, "a", "1.0.0", "CVE-1-1"),
      make_entry(EcosystemId::Npm, "a", "1.0.0", "CVE-1-2"),
      make_entry(EcosystemId::Npm, "a", "1.1.0", "CVE-1-3"),
      make_entry(EcosystemId::Npm, "b", "2.0.0", "CVE-1-4"),
  });
  const auto& f = snapshot.stats.per_ecosystem.at(EcosystemId::Npm);
  CHECK(f.component_freq.max == 3);
  CHECK(f.component_freq.min == 1);
  CHECK(f.component_freq.avg == doctest::Approx(2.0));
  CHECK(f.component_freq.median == doctest::Approx(2.0));
  CHECK(f.component_version_freq.max == 2);
  CHECK(f.component_version_freq.median == doctest::Approx(1.0));
}

TEST_CASE("select_versions applies the pipeline") {
  BuildConfig cfg;
  cfg.version_cap = 10;
  cfg.window_start = "2020-01-01T00:00:00Z";
  cfg.window_end = "2026-01-01T00:00:00Z";

  auto component = canonicalize_component(EcosystemId::Npm, "demo");
  std::vector<RegistryRelease> releases;
  for (int i = 0; i < 25; ++i) {
    RegistryRelease r;
    r.component = component;
    r.version.raw = "1." + std::to_string(i) + ".0";
    r.version.released_at = "2023-01-" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1) +
                            "T00:00:00Z";
    releases.push_back(r);
  }

  SUBCASE("recency prefix for the non-NuGet ecosystems") {
    auto picked = select_versions(component, releases, cfg);
    REQUIRE(picked.size() == 10);
    CHECK(picked.front().raw == "1.15.0");
    CHECK(picked.back().raw == "1.24.0");
  }

  SUBCASE("yanked and prerelease versions fall out") {
    releases[24].yanked = true;
    releases[23].version.prerelease = true;
    auto picked = select_versions(component, releases, cfg);
    CHECK(picked.back().raw == "1.22.0");
    cfg.include_prereleases = true;
    picked = select_versions(component, releases, cfg);
    CHECK(picked.back().raw == "1.23.0");
  }

  SUBCASE("window excludes undated and out-of-window releases") {
    releases[24].version.released_at = "2026-06-01T00:00:00Z";
    releases[23].version.released_at.reset();
    auto picked = select_versions(component, releases, cfg);
    CHECK(picked.back().raw == "1.22.0");

    cfg.window_start = "2030-01-01T00:00:00Z";
    cfg.window_end = "2031-01-01T00:00:00Z";
    CHECK(select_versions(component, releases, cfg).empty());
  }
}

TEST_CASE("NuGet selection is evenly distributed") {
  BuildConfig cfg;
  cfg.version_cap = 10;
  auto component = canonicalize_component(EcosystemId::NuGet, "Demo.Pkg");

  auto make_releases = [&](int n) {
    std::vector<RegistryRelease> releases;
    for (int i = 0; i < n; ++i) {
      RegistryRelease r;
      r.component = component;
      r.version.raw = "1." + std::to_string(i) + ".0";
      releases.push_back(r);
    }
    return releases;
  };

  SUBCASE("20 survivors, cap 10: every second version") {
    auto picked = select_versions(component, make_releases(20), cfg);
    REQUIRE(picked.size() == 10);
    for (int i = 0; i < 10; ++i) CHECK(picked[i].raw == "1." + std::to_string(2 * i) + ".0");
  }

  SUBCASE("spacing and size hold for every list length up to 50") {
    for (int n = 1; n <= 50; ++n) {
      auto picked = select_versions(component, make_releases(n), cfg);
      const size_t expected = std::min<size_t>(n, 10);
      REQUIRE(picked.size() == expected);
      // selection preserves order and is unique
      for (size_t i = 0; i + 1 < picked.size(); ++i) CHECK(picked[i].raw != picked[i + 1].raw);
      if (n <= 10) continue;
      // gaps between consecutive picked indices differ by at most one
      std::vector<int> indices;
      for (const auto& v : picked) {
        const std::string middle = v.raw.substr(2, v.raw.size() - 4);
        indices.push_back(std::stoi(middle));
      }
      int min_gap = n, max_gap = 0;
      for (size_t i = 0; i + 1 < indices.size(); ++i) {
        const int gap = indices[i + 1] - indices[i];
        min_gap = std::min(min_gap, gap);
        max_gap = std::max(max_gap, gap);
      }
      CHECK(max_gap - min_gap <= 1);
    }
  }
}

TEST_CASE("config invariants are enforced") {
  BuildConfig cfg;
  cfg.version_cap = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.version_cap = 10;
  cfg.window_start = "2026-01-01T00:00:00Z";
  cfg.window_end = "2025-01-01T00:00:00Z";
  CHECK_THROWS_AS(cfg.validate(), Error);
}

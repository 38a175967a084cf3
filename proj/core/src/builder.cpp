#include "scabench/builder.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "scabench/errors.hpp"

namespace scabench {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool within_window(const VersionRef& v, const BuildConfig& cfg) {
  if (!cfg.window_start && !cfg.window_end) return true;
  // A release with an unknown date cannot be placed inside the window.
  if (!v.released_at) return false;
  if (cfg.window_start && *v.released_at < *cfg.window_start) return false;
  if (cfg.window_end && *v.released_at > *cfg.window_end) return false;
  return true;
}

}  // namespace

std::vector<VersionRef> select_versions(const ComponentRef& component,
                                        const std::vector<RegistryRelease>& releases,
                                        const BuildConfig& cfg) {
  cfg.validate();
  std::vector<VersionRef> survivors;
  for (const auto& r : releases) {
    if (r.yanked) continue;
    if (r.version.prerelease && !cfg.include_prereleases) continue;
    if (!within_window(r.version, cfg)) continue;
    survivors.push_back(r.version);
  }
  const size_t cap = static_cast<size_t>(cfg.version_cap);
  if (survivors.size() <= cap) return survivors;

  if (component.ecosystem == EcosystemId::NuGet) {
    // Evenly spaced selection over the whole ordered survivor list.
    std::vector<VersionRef> picked;
    picked.reserve(cap);
    for (size_t i = 0; i < cap; ++i)
      picked.push_back(survivors[i * survivors.size() / cap]);
    return picked;
  }
  // Most recent `cap` releases, still in ascending order.
  return {survivors.end() - static_cast<long>(cap), survivors.end()};
}

Snapshot build_snapshot(const BuildConfig& cfg, OsvClient& osv, RegistryClient& registry) {
  cfg.validate();

  Snapshot snapshot;
  snapshot.config = cfg;
  snapshot.created_at = utc_now();
  const std::string retrieved_at = snapshot.created_at;

  for (const auto& [ecosystem, coordinates] : cfg.components) {
    // Version selection per curated component, in list order.
    std::vector<std::pair<ComponentRef, VersionRef>> tuples;
    for (const auto& raw : coordinates) {
      ComponentRef component = canonicalize_component(ecosystem, raw);
      auto releases = registry.list_versions(component);
      for (auto& version : select_versions(component, releases, cfg))
        tuples.emplace_back(component, std::move(version));
    }
    if (tuples.empty()) continue;

    auto records_per_tuple = osv.query_batch(tuples);

    long long collected = 0;
    for (size_t i = 0; i < tuples.size() && collected < cfg.target_entries; ++i) {
      auto records = records_per_tuple[i];
      // Deterministic advisory admission: canonical id order, then the cap.
      std::sort(records.begin(), records.end(),
                [](const OsvVulnRecord& a, const OsvVulnRecord& b) { return a.id < b.id; });
      records.erase(std::unique(records.begin(), records.end(),
                                [](const OsvVulnRecord& a, const OsvVulnRecord& b) {
                                  return a.id == b.id;
                                }),
                    records.end());
      if (cfg.per_version_advisory_cap &&
          records.size() > static_cast<size_t>(*cfg.per_version_advisory_cap))
        records.resize(static_cast<size_t>(*cfg.per_version_advisory_cap));

      for (const auto& record : records) {
        if (collected >= cfg.target_entries) break;
        GroundTruthEntry entry;
        entry.ecosystem = ecosystem;
        entry.component = tuples[i].first;
        entry.version = tuples[i].second;
        entry.vuln = canonical_vuln(record.id, record.aliases, record.id);
        entry.aliases = record.aliases;
        entry.cves = collect_cves(entry.vuln, entry.aliases);
        entry.retrieved_at = retrieved_at;
        snapshot.entries.push_back(std::move(entry));
        ++collected;
      }
    }
  }

  // Balance: canonical order, dedup on (e,c,v,u), then stable truncation to
  // the per-ecosystem target.
  std::sort(snapshot.entries.begin(), snapshot.entries.end());
  snapshot.entries.erase(std::unique(snapshot.entries.begin(), snapshot.entries.end()),
                         snapshot.entries.end());
  std::map<EcosystemId, long long> kept;
  std::vector<GroundTruthEntry> balanced;
  balanced.reserve(snapshot.entries.size());
  for (auto& entry : snapshot.entries) {
    if (kept[entry.ecosystem] >= cfg.target_entries) continue;
    ++kept[entry.ecosystem];
    balanced.push_back(std::move(entry));
  }
  snapshot.entries = std::move(balanced);

  snapshot.stats = compute_stats(snapshot.entries);
  snapshot.digest = hash_entries(snapshot.entries);
  return snapshot;
}

}  // namespace scabench

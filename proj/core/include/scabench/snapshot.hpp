#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scabench/model.hpp"

namespace scabench {

// Generation parameters for one ground-truth snapshot.
struct BuildConfig {
  // Curated coordinate lists per ecosystem, in collection order.
  std::map<EcosystemId, std::vector<std::string>> components;
  int version_cap = 10;                       // most recent versions per component
  std::optional<std::string> window_start;    // RFC 3339 UTC, inclusive
  std::optional<std::string> window_end;
  long long target_entries = 250;             // per-ecosystem entry target
  bool include_prereleases = false;
  std::optional<int> per_version_advisory_cap;

  void validate() const;
};

void to_json(nlohmann::json& j, const BuildConfig& c);
void from_json(const nlohmann::json& j, BuildConfig& c);

struct FrequencyStats {
  long long max = 0;
  double avg = 0.0;
  long long min = 0;
  double median = 0.0;
};

struct EcosystemStats {
  long long unique_components = 0;
  long long osv_entries = 0;
  long long cve_backed_findings = 0;
  long long distinct_cves = 0;
  double comp_per_osv = 0.0;
  double cvef_per_osv = 0.0;
  double v_share = 0.0;  // percent of all OSV entries
  double c_share = 0.0;  // percent of all unique components
  FrequencyStats component_freq;
  FrequencyStats component_version_freq;
};

struct SnapshotStats {
  std::map<EcosystemId, EcosystemStats> per_ecosystem;
  // TOTAL row: counts are sums; distinct_cves follows the per-ecosystem sum
  // convention. The globally deduplicated CVE count is reported separately.
  EcosystemStats total;
  long long global_distinct_cves = 0;
};

void to_json(nlohmann::json& j, const SnapshotStats& s);
void from_json(const nlohmann::json& j, SnapshotStats& s);

// A dated, hashed, balanced ground-truth set. Entries are kept in canonical
// order (ecosystem, component, version raw, vuln id) at all times.
struct Snapshot {
  std::vector<GroundTruthEntry> entries;
  BuildConfig config;
  std::string created_at;
  std::string digest;
  SnapshotStats stats;
};

// Sorts, deduplicates on (e,c,v,u) and recomputes stats + digest.
void finalize_snapshot(Snapshot& s);

// SHA-256 over the canonical serialization of the entries alone: sorted
// entries, sorted-key JSON, one line each. Timestamps never participate.
std::string hash_snapshot(const Snapshot& s);
std::string hash_entries(const std::vector<GroundTruthEntry>& entries);

SnapshotStats compute_stats(const std::vector<GroundTruthEntry>& entries);

// Persistence: entries.jsonl + stats.json + manifest.json under dir.
void save_snapshot(const Snapshot& s, const std::filesystem::path& dir);
Snapshot load_snapshot(const std::filesystem::path& dir);

}  // namespace scabench

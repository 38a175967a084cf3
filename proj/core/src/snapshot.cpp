#include "scabench/snapshot.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "scabench/errors.hpp"
#include "scabench/hashing.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

void BuildConfig::validate() const {
  if (version_cap < 1) throw_error(ErrorKind::Usage, "version_cap must be >= 1");
  if (target_entries < 0) throw_error(ErrorKind::Usage, "target_entries must be >= 0");
  if (window_start && window_end && *window_start > *window_end)
    throw_error(ErrorKind::Usage, "date window start is after its end");
  if (per_version_advisory_cap && *per_version_advisory_cap < 1)
    throw_error(ErrorKind::Usage, "per_version_advisory_cap must be >= 1");
}

void to_json(nlohmann::json& j, const BuildConfig& c) {
  auto comps = nlohmann::json::object();
  for (const auto& [eco, list] : c.components) comps[to_string(eco)] = list;
  j = nlohmann::json{
      {"components", comps},
      {"include_prereleases", c.include_prereleases},
      {"target_entries", c.target_entries},
      {"version_cap", c.version_cap},
  };
  if (c.window_start) j["window_start"] = *c.window_start;
  if (c.window_end) j["window_end"] = *c.window_end;
  if (c.per_version_advisory_cap) j["per_version_advisory_cap"] = *c.per_version_advisory_cap;
}

void from_json(const nlohmann::json& j, BuildConfig& c) {
  c = BuildConfig{};
  if (j.contains("components"))
    for (const auto& [eco, list] : j.at("components").items())
      c.components[ecosystem_from_string(eco)] = list.get<std::vector<std::string>>();
  c.version_cap = j.value("version_cap", 10);
  c.target_entries = j.value("target_entries", 250LL);
  c.include_prereleases = j.value("include_prereleases", false);
  if (j.contains("window_start")) c.window_start = j.at("window_start").get<std::string>();
  if (j.contains("window_end")) c.window_end = j.at("window_end").get<std::string>();
  if (j.contains("per_version_advisory_cap"))
    c.per_version_advisory_cap = j.at("per_version_advisory_cap").get<int>();
}

namespace {

void to_json_freq(nlohmann::json& j, const FrequencyStats& f) {
  j = nlohmann::json{{"avg", f.avg}, {"max", f.max}, {"median", f.median}, {"min", f.min}};
}

FrequencyStats freq_from_json(const nlohmann::json& j) {
  FrequencyStats f;
  f.avg = j.value("avg", 0.0);
  f.max = j.value("max", 0LL);
  f.median = j.value("median", 0.0);
  f.min = j.value("min", 0LL);
  return f;
}

void to_json_eco(nlohmann::json& j, const EcosystemStats& s) {
  nlohmann::json cf, cvf;
  to_json_freq(cf, s.component_freq);
  to_json_freq(cvf, s.component_version_freq);
  j = nlohmann::json{
      {"c_share", s.c_share},
      {"comp_per_osv", s.comp_per_osv},
      {"component_freq", cf},
      {"component_version_freq", cvf},
      {"cve_backed_findings", s.cve_backed_findings},
      {"cvef_per_osv", s.cvef_per_osv},
      {"distinct_cves", s.distinct_cves},
      {"osv_entries", s.osv_entries},
      {"unique_components", s.unique_components},
      {"v_share", s.v_share},
  };
}

EcosystemStats eco_from_json(const nlohmann::json& j) {
  EcosystemStats s;
  s.c_share = j.value("c_share", 0.0);
  s.comp_per_osv = j.value("comp_per_osv", 0.0);
  s.cve_backed_findings = j.value("cve_backed_findings", 0LL);
  s.cvef_per_osv = j.value("cvef_per_osv", 0.0);
  s.distinct_cves = j.value("distinct_cves", 0LL);
  s.osv_entries = j.value("osv_entries", 0LL);
  s.unique_components = j.value("unique_components", 0LL);
  s.v_share = j.value("v_share", 0.0);
  if (j.contains("component_freq")) s.component_freq = freq_from_json(j.at("component_freq"));
  if (j.contains("component_version_freq"))
    s.component_version_freq = freq_from_json(j.at("component_version_freq"));
  return s;
}

FrequencyStats frequency_stats(std::vector<long long> counts) {
  FrequencyStats f;
  if (counts.empty()) return f;
  std::sort(counts.begin(), counts.end());
  f.min = counts.front();
  f.max = counts.back();
  f.avg = static_cast<double>(std::accumulate(counts.begin(), counts.end(), 0LL)) /
          static_cast<double>(counts.size());
  const size_t n = counts.size();
  f.median = n % 2 == 1 ? static_cast<double>(counts[n / 2])
                        : (static_cast<double>(counts[n / 2 - 1]) +
                           static_cast<double>(counts[n / 2])) /
                              2.0;
  return f;
}

}  // namespace

void to_json(nlohmann::json& j, const SnapshotStats& s) {
  auto per = nlohmann::json::object();
  for (const auto& [eco, stats] : s.per_ecosystem) {
    nlohmann::json row;
    to_json_eco(row, stats);
    per[to_string(eco)] = row;
  }
  nlohmann::json total;
  to_json_eco(total, s.total);
  j = nlohmann::json{{"global_distinct_cves", s.global_distinct_cves},
                     {"per_ecosystem", per},
                     {"total", total}};
}

void from_json(const nlohmann::json& j, SnapshotStats& s) {
  s = SnapshotStats{};
  s.global_distinct_cves = j.value("global_distinct_cves", 0LL);
  if (j.contains("per_ecosystem"))
    for (const auto& [eco, row] : j.at("per_ecosystem").items())
      s.per_ecosystem[ecosystem_from_string(eco)] = eco_from_json(row);
  if (j.contains("total")) s.total = eco_from_json(j.at("total"));
}

SnapshotStats compute_stats(const std::vector<GroundTruthEntry>& entries) {
  SnapshotStats stats;

  std::map<EcosystemId, std::vector<const GroundTruthEntry*>> by_eco;
  for (const auto& e : entries) by_eco[e.ecosystem].push_back(&e);

  long long total_components = 0;
  long long total_entries = static_cast<long long>(entries.size());
  std::set<std::string> global_cves;

  for (const auto& [eco, list] : by_eco) {
    EcosystemStats s;
    s.osv_entries = static_cast<long long>(list.size());

    std::map<std::string, long long> comp_freq;
    std::map<std::pair<std::string, std::string>, long long> comp_ver_freq;
    std::set<std::string> cves;
    for (const auto* e : list) {
      comp_freq[e->component.canonical_key()]++;
      comp_ver_freq[{e->component.canonical_key(), e->version.raw}]++;
      if (!e->cves.empty()) s.cve_backed_findings++;
      for (const auto& c : e->cves) {
        cves.insert(c.value);
        global_cves.insert(c.value);
      }
    }
    s.unique_components = static_cast<long long>(comp_freq.size());
    s.distinct_cves = static_cast<long long>(cves.size());
    if (s.osv_entries > 0) {
      s.comp_per_osv = static_cast<double>(s.unique_components) /
                       static_cast<double>(s.osv_entries);
      s.cvef_per_osv = static_cast<double>(s.cve_backed_findings) /
                       static_cast<double>(s.osv_entries);
    }
    std::vector<long long> cf, cvf;
    for (const auto& [_, n] : comp_freq) cf.push_back(n);
    for (const auto& [_, n] : comp_ver_freq) cvf.push_back(n);
    s.component_freq = frequency_stats(std::move(cf));
    s.component_version_freq = frequency_stats(std::move(cvf));

    total_components += s.unique_components;
    stats.per_ecosystem[eco] = s;
  }

  // Shares need the totals; second pass.
  for (auto& [eco, s] : stats.per_ecosystem) {
    if (total_entries > 0)
      s.v_share = 100.0 * static_cast<double>(s.osv_entries) / static_cast<double>(total_entries);
    if (total_components > 0)
      s.c_share = 100.0 * static_cast<double>(s.unique_components) /
                  static_cast<double>(total_components);
  }

  EcosystemStats& total = stats.total;
  std::map<std::string, long long> comp_freq_all;
  std::map<std::pair<std::string, std::string>, long long> comp_ver_freq_all;
  for (const auto& e : entries) {
    comp_freq_all[to_string(e.ecosystem) + "/" + e.component.canonical_key()]++;
    comp_ver_freq_all[{to_string(e.ecosystem) + "/" + e.component.canonical_key(),
                       e.version.raw}]++;
  }
  total.unique_components = total_components;
  total.osv_entries = total_entries;
  for (const auto& [_, s] : stats.per_ecosystem) {
    total.cve_backed_findings += s.cve_backed_findings;
    total.distinct_cves += s.distinct_cves;  // TOTAL row uses the per-ecosystem sum
  }
  if (total.osv_entries > 0) {
    total.comp_per_osv = static_cast<double>(total.unique_components) /
                         static_cast<double>(total.osv_entries);
    total.cvef_per_osv = static_cast<double>(total.cve_backed_findings) /
                         static_cast<double>(total.osv_entries);
    total.v_share = 100.0;
    total.c_share = 100.0;
  }
  std::vector<long long> cf, cvf;
  for (const auto& [_, n] : comp_freq_all) cf.push_back(n);
  for (const auto& [_, n] : comp_ver_freq_all) cvf.push_back(n);
  total.component_freq = frequency_stats(std::move(cf));
  total.component_version_freq = frequency_stats(std::move(cvf));

  stats.global_distinct_cves = static_cast<long long>(global_cves.size());
  return stats;
}

std::string hash_entries(const std::vector<GroundTruthEntry>& entries) {
  std::vector<const GroundTruthEntry*> sorted;
  sorted.reserve(entries.size());
  for (const auto& e : entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const GroundTruthEntry* a, const GroundTruthEntry* b) { return *a < *b; });
  std::string bytes;
  for (const auto* e : sorted) {
    bytes += canonical_dump(digest_view(*e));
    bytes += '\n';
  }
  return sha256_hex(bytes);
}

std::string hash_snapshot(const Snapshot& s) { return hash_entries(s.entries); }

void finalize_snapshot(Snapshot& s) {
  std::sort(s.entries.begin(), s.entries.end());
  s.entries.erase(std::unique(s.entries.begin(), s.entries.end()), s.entries.end());
  s.stats = compute_stats(s.entries);
  s.digest = hash_entries(s.entries);
}

void save_snapshot(const Snapshot& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<nlohmann::json> rows;
  rows.reserve(s.entries.size());
  for (const auto& e : s.entries) {
    nlohmann::json row = e;
    // One retrieval stamp per snapshot lives in the manifest; keeping it out
    // of the entry lines makes rebuilt artifacts byte-identical.
    row.erase("retrieved_at");
    rows.push_back(std::move(row));
  }
  write_jsonl_file(dir / "entries.jsonl", rows);

  nlohmann::json stats = s.stats;
  write_json_file(dir / "stats.json", stats);

  nlohmann::json manifest{
      {"config", s.config},
      {"created_at", s.created_at},
      {"digest", s.digest},
      {"entries", s.entries.size()},
  };
  write_json_file(dir / "manifest.json", manifest);
}

Snapshot load_snapshot(const std::filesystem::path& dir) {
  Snapshot s;
  for (const auto& row : read_jsonl_file(dir / "entries.jsonl"))
    s.entries.push_back(row.get<GroundTruthEntry>());
  auto manifest = read_json_file(dir / "manifest.json");
  if (manifest.contains("config")) s.config = manifest.at("config").get<BuildConfig>();
  s.created_at = manifest.value("created_at", std::string());
  for (auto& e : s.entries)
    if (e.retrieved_at.empty()) e.retrieved_at = s.created_at;
  s.digest = manifest.value("digest", std::string());
  if (std::filesystem::exists(dir / "stats.json")) {
    s.stats = read_json_file(dir / "stats.json").get<SnapshotStats>();
  } else {
    s.stats = compute_stats(s.entries);
  }
  std::sort(s.entries.begin(), s.entries.end());
  const std::string recomputed = hash_entries(s.entries);
  if (!s.digest.empty() && s.digest != recomputed)
    throw_error(ErrorKind::Data, "snapshot digest mismatch in " + dir.string());
  s.digest = recomputed;
  return s;
}

}  // namespace scabench

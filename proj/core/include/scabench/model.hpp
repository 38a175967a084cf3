#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace scabench {

// The four ecosystems covered by the ground-truth pipeline.
enum class EcosystemId { Maven, Npm, NuGet, PyPI };

std::string to_string(EcosystemId e);
EcosystemId ecosystem_from_string(const std::string& s);
std::vector<EcosystemId> all_ecosystems();

// Canonical component coordinate. Maven components carry a group and render
// as group:artifact; the other ecosystems use a single canonical name.
struct ComponentRef {
  EcosystemId ecosystem = EcosystemId::Npm;
  std::string name;                  // display form (NuGet keeps original casing)
  std::optional<std::string> group;  // Maven only

  // Form used for equality, joins and sorting. NuGet names compare
  // case-insensitively, so the key lowercases them.
  std::string canonical_key() const;
  // Human-facing coordinate: "group:artifact" for Maven, name otherwise.
  std::string coordinate() const;

  friend bool operator==(const ComponentRef& a, const ComponentRef& b) {
    return a.ecosystem == b.ecosystem && a.canonical_key() == b.canonical_key();
  }
  friend std::strong_ordering operator<=>(const ComponentRef& a, const ComponentRef& b);
};

// Normalizes a raw component name into its canonical form for the ecosystem.
// Idempotent. Maven names must contain a ':' separating group and artifact.
ComponentRef canonicalize_component(EcosystemId ecosystem, const std::string& raw_name);

// A concrete release. The raw string is kept byte-exact: it feeds hashing
// and SBOM emission.
struct VersionRef {
  std::string raw;
  std::optional<std::string> released_at;  // RFC 3339 UTC, when the registry provides one
  bool prerelease = false;

  friend bool operator==(const VersionRef& a, const VersionRef& b) { return a.raw == b.raw; }
  friend std::strong_ordering operator<=>(const VersionRef& a, const VersionRef& b) {
    return a.raw <=> b.raw;
  }
};

enum class VulnScheme { Cve, Ghsa, OsvNative, Other };

std::string to_string(VulnScheme s);

// A vulnerability identifier; the scheme is derived from the prefix.
struct VulnId {
  std::string value;

  VulnId() = default;
  explicit VulnId(std::string id) : value(std::move(id)) {}

  VulnScheme scheme() const;
  bool is_cve() const { return scheme() == VulnScheme::Cve; }

  friend bool operator==(const VulnId& a, const VulnId& b) { return a.value == b.value; }
  friend std::strong_ordering operator<=>(const VulnId& a, const VulnId& b) {
    return a.value <=> b.value;
  }
};

// Resolves the canonical identifier for an OSV record: the id returned by the
// query wins; everything else is retained as an alias.
VulnId canonical_vuln(const VulnId& entry_id, const std::set<VulnId>& aliases,
                      const VulnId& osv_returned);

// One ground-truth tuple (e, c, v, u): "version v of component c in
// ecosystem e is affected by vulnerability u".
struct GroundTruthEntry {
  EcosystemId ecosystem = EcosystemId::Npm;
  ComponentRef component;
  VersionRef version;
  VulnId vuln;
  std::set<VulnId> aliases;
  std::set<VulnId> cves;  // always a subset of aliases + vuln
  std::string retrieved_at;

  // Identity key used for dedup, sorting and hashing.
  std::tuple<std::string, std::string, std::string, std::string> key() const;

  friend bool operator==(const GroundTruthEntry& a, const GroundTruthEntry& b) {
    return a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(const GroundTruthEntry& a, const GroundTruthEntry& b) {
    return a.key() <=> b.key();
  }
};

// Builds the CVE subset from vuln + aliases (invariant: cves ⊆ aliases ∪ {vuln}).
std::set<VulnId> collect_cves(const VulnId& vuln, const std::set<VulnId>& aliases);

enum class ToolId { Dtrack, Snyk, OssIndex, Github, Trivy, Replay };

std::string to_string(ToolId t);
ToolId tool_from_string(const std::string& s);
std::vector<ToolId> all_tools();

enum class MatchBasis { Exact, Range };

std::string to_string(MatchBasis b);

// One tool-reported vulnerability normalized onto the shared coordinate
// space. `affected_range` carries the raw range text for range-basis
// findings (evaluated with version-semantics during matching).
struct NormalizedFinding {
  ToolId tool = ToolId::Replay;
  EcosystemId ecosystem = EcosystemId::Npm;
  ComponentRef component;
  VersionRef version;
  VulnId vuln;
  std::set<VulnId> aliases;
  MatchBasis basis = MatchBasis::Exact;
  std::optional<std::string> affected_range;
  bool out_of_input = false;  // reported for a tuple outside the snapshot

  // Dedup key: (tool, e, c, v, canonical vuln).
  std::tuple<std::string, std::string, std::string, std::string, std::string> key() const;

  // All identifiers carried by the finding ({vuln} ∪ aliases).
  std::set<VulnId> identifier_set() const;

  friend bool operator==(const NormalizedFinding& a, const NormalizedFinding& b) {
    return a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(const NormalizedFinding& a, const NormalizedFinding& b) {
    return a.key() <=> b.key();
  }
};

// Identifier set of a ground-truth entry ({vuln} ∪ aliases).
std::set<VulnId> identifier_set(const GroundTruthEntry& entry);

// --- canonical JSON (sorted keys, UTF-8) ---------------------------------

void to_json(nlohmann::json& j, const ComponentRef& c);
void from_json(const nlohmann::json& j, ComponentRef& c);
void to_json(nlohmann::json& j, const VersionRef& v);
void from_json(const nlohmann::json& j, VersionRef& v);
void to_json(nlohmann::json& j, const VulnId& v);
void from_json(const nlohmann::json& j, VulnId& v);
void to_json(nlohmann::json& j, const GroundTruthEntry& e);
void from_json(const nlohmann::json& j, GroundTruthEntry& e);
void to_json(nlohmann::json& j, const NormalizedFinding& f);
void from_json(const nlohmann::json& j, NormalizedFinding& f);

// Serialization used for snapshot digests: identity fields only, no
// timestamps, so that pure data equality drives temporal-control gating.
nlohmann::json digest_view(const GroundTruthEntry& entry);

}  // namespace scabench

#include "scabench/model.hpp"

#include <algorithm>
#include <cctype>

#include "scabench/errors.hpp"

namespace scabench {

namespace {

std::string ascii_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// PyPI name normalization: lowercase, runs of '.', '_', '-' collapse to '-'.
std::string normalize_pypi(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  bool pending_sep = false;
  for (char ch : name) {
    if (ch == '.' || ch == '_' || ch == '-') {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) {
      out.push_back('-');
      pending_sep = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

}  // namespace

std::string to_string(EcosystemId e) {
  switch (e) {
    case EcosystemId::Maven: return "Maven";
    case EcosystemId::Npm: return "npm";
    case EcosystemId::NuGet: return "NuGet";
    case EcosystemId::PyPI: return "PyPI";
  }
  throw_error(ErrorKind::Usage, "invalid ecosystem value");
}

EcosystemId ecosystem_from_string(const std::string& s) {
  const std::string v = ascii_lower(trim(s));
  if (v == "maven") return EcosystemId::Maven;
  if (v == "npm") return EcosystemId::Npm;
  if (v == "nuget") return EcosystemId::NuGet;
  if (v == "pypi") return EcosystemId::PyPI;
  throw_error(ErrorKind::Decode, "unknown ecosystem: " + s);
}

std::vector<EcosystemId> all_ecosystems() {
  return {EcosystemId::Maven, EcosystemId::Npm, EcosystemId::NuGet, EcosystemId::PyPI};
}

std::string ComponentRef::canonical_key() const {
  switch (ecosystem) {
    case EcosystemId::Maven:
      return (group ? *group : std::string()) + ":" + name;
    case EcosystemId::NuGet:
      return ascii_lower(name);
    default:
      return name;
  }
}

std::string ComponentRef::coordinate() const {
  if (ecosystem == EcosystemId::Maven && group) return *group + ":" + name;
  return name;
}

std::strong_ordering operator<=>(const ComponentRef& a, const ComponentRef& b) {
  if (auto c = to_string(a.ecosystem) <=> to_string(b.ecosystem); c != 0) return c;
  return a.canonical_key() <=> b.canonical_key();
}

ComponentRef canonicalize_component(EcosystemId ecosystem, const std::string& raw_name) {
  const std::string name = trim(raw_name);
  if (name.empty()) throw_error(ErrorKind::Coordinate, "empty component name");

  ComponentRef ref;
  ref.ecosystem = ecosystem;
  switch (ecosystem) {
    case EcosystemId::Maven: {
      auto colon = name.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == name.size())
        throw_error(ErrorKind::Coordinate,
                    "Maven coordinate must be group:artifact, got '" + name + "'");
      ref.group = name.substr(0, colon);
      ref.name = name.substr(colon + 1);
      break;
    }
    case EcosystemId::Npm:
      ref.name = ascii_lower(name);
      break;
    case EcosystemId::PyPI:
      ref.name = normalize_pypi(name);
      if (ref.name.empty()) throw_error(ErrorKind::Coordinate, "PyPI name has no characters left");
      break;
    case EcosystemId::NuGet:
      ref.name = name;  // original casing kept for display; key lowercases
      break;
  }
  return ref;
}

std::string to_string(VulnScheme s) {
  switch (s) {
    case VulnScheme::Cve: return "CVE";
    case VulnScheme::Ghsa: return "GHSA";
    case VulnScheme::OsvNative: return "OSV";
    case VulnScheme::Other: return "other";
  }
  return "other";
}

VulnScheme VulnId::scheme() const {
  auto has_prefix = [this](std::string_view p) { return value.rfind(p, 0) == 0; };
  if (has_prefix("CVE-")) return VulnScheme::Cve;
  if (has_prefix("GHSA-")) return VulnScheme::Ghsa;
  // OSV-native id families seen across the covered ecosystems.
  for (std::string_view p : {"PYSEC-", "GO-", "RUSTSEC-", "OSV-", "MAL-", "PSF-", "DSA-"})
    if (has_prefix(p)) return VulnScheme::OsvNative;
  return VulnScheme::Other;
}

VulnId canonical_vuln(const VulnId& entry_id, const std::set<VulnId>& aliases,
                      const VulnId& osv_returned) {
  if (osv_returned == entry_id || aliases.count(osv_returned)) return osv_returned;
  // The query response is authoritative even when the id is novel.
  return osv_returned;
}

std::set<VulnId> collect_cves(const VulnId& vuln, const std::set<VulnId>& aliases) {
  std::set<VulnId> cves;
  if (vuln.is_cve()) cves.insert(vuln);
  for (const auto& a : aliases)
    if (a.is_cve()) cves.insert(a);
  return cves;
}

std::tuple<std::string, std::string, std::string, std::string> GroundTruthEntry::key() const {
  return {to_string(ecosystem), component.canonical_key(), version.raw, vuln.value};
}

std::set<VulnId> identifier_set(const GroundTruthEntry& entry) {
  std::set<VulnId> ids = entry.aliases;
  ids.insert(entry.vuln);
  return ids;
}

std::string to_string(ToolId t) {
  switch (t) {
    case ToolId::Dtrack: return "dtrack";
    case ToolId::Snyk: return "snyk";
    case ToolId::OssIndex: return "oss-index";
    case ToolId::Github: return "github";
    case ToolId::Trivy: return "trivy";
    case ToolId::Replay: return "replay";
  }
  throw_error(ErrorKind::Usage, "invalid tool value");
}

ToolId tool_from_string(const std::string& s) {
  const std::string v = ascii_lower(trim(s));
  if (v == "dtrack") return ToolId::Dtrack;
  if (v == "snyk") return ToolId::Snyk;
  if (v == "oss-index" || v == "ossindex") return ToolId::OssIndex;
  if (v == "github") return ToolId::Github;
  if (v == "trivy") return ToolId::Trivy;
  if (v == "replay") return ToolId::Replay;
  throw_error(ErrorKind::Decode, "unknown tool: " + s);
}

std::vector<ToolId> all_tools() {
  return {ToolId::Dtrack, ToolId::Snyk, ToolId::OssIndex, ToolId::Github, ToolId::Trivy};
}

std::string to_string(MatchBasis b) {
  return b == MatchBasis::Exact ? "exact" : "range";
}

std::tuple<std::string, std::string, std::string, std::string, std::string>
NormalizedFinding::key() const {
  return {to_string(tool), to_string(ecosystem), component.canonical_key(), version.raw,
          vuln.value};
}

std::set<VulnId> NormalizedFinding::identifier_set() const {
  std::set<VulnId> ids = aliases;
  ids.insert(vuln);
  return ids;
}

// --- JSON -----------------------------------------------------------------

void to_json(nlohmann::json& j, const ComponentRef& c) {
  j = nlohmann::json{{"ecosystem", to_string(c.ecosystem)}, {"name", c.name}};
  if (c.group) j["group"] = *c.group;
}

void from_json(const nlohmann::json& j, ComponentRef& c) {
  c.ecosystem = ecosystem_from_string(j.at("ecosystem").get<std::string>());
  c.name = j.at("name").get<std::string>();
  if (j.contains("group")) c.group = j.at("group").get<std::string>();
}

void to_json(nlohmann::json& j, const VersionRef& v) {
  j = nlohmann::json{{"raw", v.raw}, {"prerelease", v.prerelease}};
  if (v.released_at) j["released_at"] = *v.released_at;
}

void from_json(const nlohmann::json& j, VersionRef& v) {
  v.raw = j.at("raw").get<std::string>();
  v.prerelease = j.value("prerelease", false);
  if (j.contains("released_at")) v.released_at = j.at("released_at").get<std::string>();
}

void to_json(nlohmann::json& j, const VulnId& v) { j = v.value; }
void from_json(const nlohmann::json& j, VulnId& v) { v.value = j.get<std::string>(); }

namespace {

nlohmann::json sorted_ids(const std::set<VulnId>& ids) {
  auto arr = nlohmann::json::array();
  for (const auto& id : ids) arr.push_back(id.value);  // std::set is already sorted
  return arr;
}

std::set<VulnId> ids_from_json(const nlohmann::json& arr) {
  std::set<VulnId> out;
  for (const auto& v : arr) out.insert(VulnId(v.get<std::string>()));
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const GroundTruthEntry& e) {
  j = nlohmann::json{
      {"aliases", sorted_ids(e.aliases)},
      {"component", e.component.coordinate()},
      {"cves", sorted_ids(e.cves)},
      {"ecosystem", to_string(e.ecosystem)},
      {"retrieved_at", e.retrieved_at},
      {"version", e.version.raw},
      {"vuln", e.vuln.value},
  };
  if (e.version.released_at) j["released_at"] = *e.version.released_at;
  if (e.version.prerelease) j["prerelease"] = true;
}

void from_json(const nlohmann::json& j, GroundTruthEntry& e) {
  e.ecosystem = ecosystem_from_string(j.at("ecosystem").get<std::string>());
  e.component = canonicalize_component(e.ecosystem, j.at("component").get<std::string>());
  e.version.raw = j.at("version").get<std::string>();
  if (j.contains("released_at")) e.version.released_at = j.at("released_at").get<std::string>();
  e.version.prerelease = j.value("prerelease", false);
  e.vuln = VulnId(j.at("vuln").get<std::string>());
  e.aliases = ids_from_json(j.value("aliases", nlohmann::json::array()));
  e.cves = ids_from_json(j.value("cves", nlohmann::json::array()));
  e.retrieved_at = j.value("retrieved_at", std::string());
}

void to_json(nlohmann::json& j, const NormalizedFinding& f) {
  j = nlohmann::json{
      {"aliases", sorted_ids(f.aliases)},
      {"basis", to_string(f.basis)},
      {"component", f.component.coordinate()},
      {"ecosystem", to_string(f.ecosystem)},
      {"tool", to_string(f.tool)},
      {"version", f.version.raw},
      {"vuln", f.vuln.value},
  };
  if (f.affected_range) j["affected_range"] = *f.affected_range;
  if (f.out_of_input) j["out_of_input"] = true;
}

void from_json(const nlohmann::json& j, NormalizedFinding& f) {
  f.tool = tool_from_string(j.at("tool").get<std::string>());
  f.ecosystem = ecosystem_from_string(j.at("ecosystem").get<std::string>());
  f.component = canonicalize_component(f.ecosystem, j.at("component").get<std::string>());
  f.version.raw = j.at("version").get<std::string>();
  f.vuln = VulnId(j.at("vuln").get<std::string>());
  f.aliases = ids_from_json(j.value("aliases", nlohmann::json::array()));
  f.basis = j.value("basis", std::string("exact")) == "range" ? MatchBasis::Range
                                                              : MatchBasis::Exact;
  if (j.contains("affected_range")) f.affected_range = j.at("affected_range").get<std::string>();
  f.out_of_input = j.value("out_of_input", false);
}

nlohmann::json digest_view(const GroundTruthEntry& entry) {
  return nlohmann::json{
      {"aliases", sorted_ids(entry.aliases)},
      {"component", entry.component.canonical_key()},
      {"cves", sorted_ids(entry.cves)},
      {"ecosystem", to_string(entry.ecosystem)},
      {"version", entry.version.raw},
      {"vuln", entry.vuln.value},
  };
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Coordinate: return "coordinate";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::Fixture: return "fixture";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::Decode: return "decode";
    case ErrorKind::Data: return "data";
    case ErrorKind::Run: return "run";
    case ErrorKind::Abort: return "abort";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace scabench

#include "scabench/sbom.hpp"

#include <algorithm>
#include <cstdint>

#include "scabench/errors.hpp"
#include "scabench/hashing.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

namespace {

// Deterministic pseudo-timestamp: epoch offset taken from the digest bytes,
// so the document carries a syntactically valid time without wall clock.
std::string timestamp_from_digest(const std::string& digest) {
  std::uint64_t seconds = 0;
  for (size_t i = 0; i < 8 && i < digest.size(); ++i) {
    int v = digest[i] <= '9' ? digest[i] - '0' : digest[i] - 'a' + 10;
    seconds = (seconds << 4) | static_cast<std::uint64_t>(v);
  }
  seconds %= 1767225600ULL;  // keep within 1970..2026
  const std::uint64_t days = seconds / 86400;
  const std::uint64_t rem = seconds % 86400;
  // civil date from days since epoch
  std::int64_t z = static_cast<std::int64_t>(days) + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::uint64_t doe = static_cast<std::uint64_t>(z - era * 146097);
  const std::uint64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const std::uint64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::uint64_t mp = (5 * doy + 2) / 153;
  const std::uint64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::uint64_t m = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t year = m <= 2 ? y + 1 : y;

  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02llu-%02lluT%02llu:%02llu:%02lluZ",
                static_cast<long long>(year), static_cast<unsigned long long>(m),
                static_cast<unsigned long long>(d),
                static_cast<unsigned long long>(rem / 3600),
                static_cast<unsigned long long>((rem / 60) % 60),
                static_cast<unsigned long long>(rem % 60));
  return buf;
}

}  // namespace

std::string SbomDocument::file_name() const {
  return "sbom-" + snapshot_digest.substr(0, 12) + ".cdx.json";
}

SbomDocument emit_sbom(const Snapshot& s) {
  if (s.entries.empty()) throw_error(ErrorKind::Usage, "cannot emit an SBOM for an empty snapshot");
  const std::string digest = s.digest.empty() ? hash_snapshot(s) : s.digest;

  SbomDocument doc;
  doc.snapshot_digest = digest;
  doc.serial_number = "urn:uuid:" + uuid5("scabench:sbom:" + digest);

  // One component per unique (e,c,v); uniqueness via rendered purl.
  std::vector<std::pair<std::string, nlohmann::json>> components;
  for (const auto& e : s.entries) {
    PackageUrl purl = to_purl(e.ecosystem, e.component, e.version);
    std::string rendered = purl.render();
    nlohmann::json component{
        {"bom-ref", rendered},
        {"name", purl.name},
        {"purl", rendered},
        {"type", "library"},
        {"version", e.version.raw},
    };
    if (purl.ns) component["group"] = *purl.ns;
    components.emplace_back(std::move(rendered), std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  components.erase(std::unique(components.begin(), components.end(),
                               [](const auto& a, const auto& b) { return a.first == b.first; }),
                   components.end());

  auto component_array = nlohmann::json::array();
  for (auto& [rendered, component] : components) {
    doc.components.push_back(PackageUrl::parse(rendered));
    component_array.push_back(std::move(component));
  }

  nlohmann::json bom{
      {"bomFormat", "CycloneDX"},
      {"components", component_array},
      {"metadata",
       nlohmann::json{
           {"timestamp", timestamp_from_digest(digest)},
           {"tools", nlohmann::json{{"components",
                                     nlohmann::json::array({nlohmann::json{
                                         {"name", "scabench"},
                                         {"type", "application"},
                                         {"version", "0.1.0"},
                                     }})}}},
       }},
      {"serialNumber", doc.serial_number},
      {"specVersion", "1.5"},
      {"version", 1},
  };
  doc.bytes = bom.dump(2) + "\n";
  return doc;
}

}  // namespace scabench

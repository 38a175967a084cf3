#include <algorithm>

#include "scabench/adapters.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/purl.hpp"

namespace scabench {

namespace {

// Basic auth header value (user:token base64).
std::string basic_auth(const std::string& user, const std::string& token) {
  static const char* table = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  const std::string creds = user + ":" + token;
  std::string out;
  size_t i = 0;
  while (i < creds.size()) {
    unsigned v = static_cast<unsigned char>(creds[i]) << 16;
    int n = 1;
    if (i + 1 < creds.size()) {
      v |= static_cast<unsigned char>(creds[i + 1]) << 8;
      n = 2;
    }
    if (i + 2 < creds.size()) {
      v |= static_cast<unsigned char>(creds[i + 2]);
      n = 3;
    }
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out.push_back(n >= 2 ? table[(v >> 6) & 63] : '=');
    out.push_back(n == 3 ? table[v & 63] : '=');
    i += 3;
  }
  return "Basic " + out;
}

// Sonatype OSS Index /api/v3/component-report: batched purl submission,
// responses mapped straight back to the submitted coordinates.
class OssIndexAdapter final : public ToolAdapter {
public:
  ToolId id() const override { return ToolId::OssIndex; }

  ToolRunResult run(const Snapshot& snapshot, const SbomDocument&, const AdapterConfig& cfg,
                    Transport& transport, CommandRunner&) override {
    cfg.validate();
    const std::string base =
        cfg.endpoint.empty() ? std::string("https://ossindex.sonatype.org") : cfg.endpoint;
    const std::string user = adapter_detail::resolve_env(cfg, "user", "OSSINDEX_USER");
    const std::string token = adapter_detail::resolve_env(cfg, "token", "OSSINDEX_TOKEN");

    // Unique coordinates in canonical order.
    std::vector<std::string> purls;
    std::map<std::string, std::tuple<EcosystemId, ComponentRef, VersionRef>> by_purl;
    for (const auto& e : snapshot.entries) {
      PackageUrl purl = to_purl(e.ecosystem, e.component, e.version);
      std::string rendered = purl.render();
      if (by_purl.emplace(rendered, std::tuple{e.ecosystem, e.component, e.version}).second)
        purls.push_back(std::move(rendered));
    }
    std::sort(purls.begin(), purls.end());

    adapter_detail::FindingCollector collector(ToolId::OssIndex, snapshot);
    ToolRunResult result;

    for (size_t offset = 0; offset < purls.size(); offset += static_cast<size_t>(cfg.batch_size)) {
      const size_t count = std::min(static_cast<size_t>(cfg.batch_size), purls.size() - offset);
      auto coordinates = nlohmann::json::array();
      for (size_t i = 0; i < count; ++i) coordinates.push_back(purls[offset + i]);

      HttpRequest request;
      request.method = "POST";
      request.url = base + "/api/v3/component-report";
      if (!user.empty()) request.headers["Authorization"] = basic_auth(user, token);
      request.body = canonical_dump(nlohmann::json{{"coordinates", coordinates}});
      HttpResponse response = transport.send(request);
      if (response.status != 200)
        throw_error(ErrorKind::Run, "oss-index component-report failed with status " +
                                        std::to_string(response.status));
      auto report = parse_json(response.body, "oss-index component report");
      if (!report.is_array())
        throw_error(ErrorKind::Decode, "oss-index component report is not an array");
      result.raw_artifacts.push_back(report);

      for (const auto& entry : report) {
        const std::string coordinates_text = entry.value("coordinates", std::string());
        auto it = by_purl.find(coordinates_text);
        for (const auto& vuln : entry.value("vulnerabilities", nlohmann::json::array())) {
          if (it == by_purl.end()) {
            collector.skip("unknown-coordinates", entry);
            continue;
          }
          const std::string cve = vuln.value("cve", std::string());
          std::string id = vuln.value("displayName", std::string());
          if (id.empty()) id = vuln.value("id", std::string());
          if (!cve.empty()) id = cve;  // canonical identifier level: prefer the CVE
          if (id.empty()) {
            collector.skip("missing-id", vuln);
            continue;
          }
          NormalizedFinding finding;
          const auto& [eco, comp, version] = it->second;
          finding.ecosystem = eco;
          finding.component = comp;
          finding.version = version;
          finding.vuln = VulnId(id);
          const std::string raw_id = vuln.value("id", std::string());
          if (!cve.empty() && !raw_id.empty() && raw_id != id)
            finding.aliases.insert(VulnId(raw_id));
          finding.basis = MatchBasis::Exact;
          collector.add(std::move(finding));
        }
      }
    }

    auto finished = collector.finish();
    finished.raw_artifacts = std::move(result.raw_artifacts);
    return finished;
  }
};

}  // namespace

std::unique_ptr<ToolAdapter> make_ossindex_adapter() {
  return std::make_unique<OssIndexAdapter>();
}

}  // namespace scabench

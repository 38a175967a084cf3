#include "scabench/adapters.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/purl.hpp"

namespace scabench {

namespace {

std::string base64_encode(std::string_view bytes) {
  static const char* table = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  while (i + 2 < bytes.size()) {
    unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                 (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                 static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out.push_back(table[(v >> 6) & 63]);
    out.push_back(table[v & 63]);
    i += 3;
  }
  if (i + 1 == bytes.size()) {
    unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out += "==";
  } else if (i + 2 == bytes.size()) {
    unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                 (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(table[(v >> 18) & 63]);
    out.push_back(table[(v >> 12) & 63]);
    out.push_back(table[(v >> 6) & 63]);
    out += "=";
  }
  return out;
}

// Dependency-Track over REST: upload the SBOM into a project, wait for the
// server-side analysis, then pull findings and normalize over purls.
class DtrackAdapter final : public ToolAdapter {
public:
  ToolId id() const override { return ToolId::Dtrack; }

  ToolRunResult run(const Snapshot& snapshot, const SbomDocument& sbom, const AdapterConfig& cfg,
                    Transport& transport, CommandRunner&) override {
    cfg.validate();
    const std::string base = cfg.endpoint.empty()
                                 ? adapter_detail::resolve_env(cfg, "url", "DTRACK_URL")
                                 : cfg.endpoint;
    if (base.empty()) throw_error(ErrorKind::Usage, "dtrack adapter needs a base URL");
    const std::string api_key = adapter_detail::resolve_env(cfg, "api_key", "DTRACK_API_KEY");

    const std::string project_name = "scabench-" + sbom.snapshot_digest.substr(0, 12);
    const std::string project_version = "1";

    adapter_detail::FindingCollector collector(ToolId::Dtrack, snapshot);
    ToolRunResult result;

    // 1. upload
    HttpRequest upload;
    upload.method = "PUT";
    upload.url = base + "/api/v1/bom";
    upload.headers["X-Api-Key"] = api_key;
    upload.body = canonical_dump(nlohmann::json{
        {"autoCreate", true},
        {"bom", base64_encode(sbom.bytes)},
        {"projectName", project_name},
        {"projectVersion", project_version},
    });
    HttpResponse uploaded = transport.send(upload);
    if (uploaded.status != 200)
      throw_error(ErrorKind::Run,
                  "dtrack BOM upload failed with status " + std::to_string(uploaded.status));
    const std::string token =
        parse_json(uploaded.body, "dtrack upload response").value("token", std::string());

    // 2. poll processing status
    for (int attempt = 0; attempt < 600; ++attempt) {
      HttpRequest poll;
      poll.url = base + "/api/v1/bom/token/" + token;
      poll.headers["X-Api-Key"] = api_key;
      HttpResponse status = transport.send(poll);
      if (status.status != 200)
        throw_error(ErrorKind::Run,
                    "dtrack token poll failed with status " + std::to_string(status.status));
      if (!parse_json(status.body, "dtrack token response").value("processing", false)) break;
    }

    // 3. resolve project uuid
    HttpRequest lookup;
    lookup.url =
        base + "/api/v1/project/lookup?name=" + project_name + "&version=" + project_version;
    lookup.headers["X-Api-Key"] = api_key;
    HttpResponse project = transport.send(lookup);
    if (project.status != 200)
      throw_error(ErrorKind::Run,
                  "dtrack project lookup failed with status " + std::to_string(project.status));
    const std::string uuid =
        parse_json(project.body, "dtrack project").value("uuid", std::string());
    if (uuid.empty()) throw_error(ErrorKind::Run, "dtrack project lookup returned no uuid");

    // 4. findings
    HttpRequest findings_request;
    findings_request.url = base + "/api/v1/finding/project/" + uuid;
    findings_request.headers["X-Api-Key"] = api_key;
    HttpResponse findings_response = transport.send(findings_request);
    if (findings_response.status != 200)
      throw_error(ErrorKind::Run, "dtrack findings fetch failed with status " +
                                      std::to_string(findings_response.status));
    auto findings = parse_json(findings_response.body, "dtrack findings");
    if (!findings.is_array()) throw_error(ErrorKind::Decode, "dtrack findings is not an array");

    for (const auto& row : findings) {
      const auto component = row.value("component", nlohmann::json::object());
      const auto vulnerability = row.value("vulnerability", nlohmann::json::object());
      const std::string purl_text = component.value("purl", std::string());
      const std::string vuln_id = vulnerability.value("vulnId", std::string());
      if (purl_text.empty() || vuln_id.empty()) {
        collector.skip("missing-coordinates", row);
        continue;
      }
      try {
        auto [eco, comp, version] = from_purl(PackageUrl::parse(purl_text));
        NormalizedFinding finding;
        finding.ecosystem = eco;
        finding.component = comp;
        finding.version = version;
        finding.vuln = VulnId(vuln_id);
        for (const auto& alias : vulnerability.value("aliases", nlohmann::json::array())) {
          for (const char* key : {"cveId", "ghsaId", "osvId", "snykId"}) {
            if (alias.contains(key) && alias.at(key).is_string()) {
              const std::string value = alias.at(key).get<std::string>();
              if (!value.empty() && value != vuln_id) finding.aliases.insert(VulnId(value));
            }
          }
        }
        finding.basis = MatchBasis::Exact;
        collector.add(std::move(finding));
      } catch (const Error& e) {
        collector.skip("purl", nlohmann::json{{"error", e.what()}, {"purl", purl_text}});
      }
    }

    result = collector.finish();
    result.raw_artifacts.push_back(std::move(findings));
    return result;
  }
};

}  // namespace

std::unique_ptr<ToolAdapter> make_dtrack_adapter() { return std::make_unique<DtrackAdapter>(); }

}  // namespace scabench

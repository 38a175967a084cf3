#include "scabench/adapters.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

namespace {

std::optional<EcosystemId> ecosystem_from_package_manager(const std::string& pm) {
  if (pm == "npm" || pm == "yarn") return EcosystemId::Npm;
  if (pm == "maven" || pm == "gradle") return EcosystemId::Maven;
  if (pm == "pip" || pm == "pypi" || pm == "poetry") return EcosystemId::PyPI;
  if (pm == "nuget" || pm == "paket") return EcosystemId::NuGet;
  return std::nullopt;
}

// Snyk through its CLI in the SBOM workflow: the generated CycloneDX file
// is submitted via `snyk sbom test` and the JSON output parsed. Nonzero
// exits are retried up to the configured attempt count; exit code 1 means
// "vulnerabilities found" and is a success.
class SnykAdapter final : public ToolAdapter {
public:
  ToolId id() const override { return ToolId::Snyk; }

  ToolRunResult run(const Snapshot& snapshot, const SbomDocument& sbom, const AdapterConfig& cfg,
                    Transport&, CommandRunner& runner) override {
    cfg.validate();
    const std::string executable = cfg.endpoint.empty() ? "snyk" : cfg.endpoint;
    const std::string token = adapter_detail::resolve_env(cfg, "token", "SNYK_TOKEN");

    std::filesystem::path work =
        cfg.work_dir.empty() ? std::filesystem::temp_directory_path() : cfg.work_dir;
    std::filesystem::create_directories(work);
    const auto sbom_path = work / sbom.file_name();
    write_file(sbom_path, sbom.bytes);

    CommandSpec spec;
    spec.argv = {executable, "sbom",  "test",           "--experimental",
                 "--file",   sbom_path.string(), "--json"};
    if (!token.empty()) spec.env["SNYK_TOKEN"] = token;
    spec.timeout_seconds = cfg.timeout_seconds;

    CommandResult command;
    bool ok = false;
    for (int attempt = 0; attempt < cfg.retry && !ok; ++attempt) {
      command = runner.run(spec);
      ok = !command.timed_out && (command.exit_code == 0 || command.exit_code == 1);
    }
    if (!ok)
      throw_error(ErrorKind::Run, "snyk CLI failed after " + std::to_string(cfg.retry) +
                                      " attempts (exit " + std::to_string(command.exit_code) +
                                      (command.timed_out ? ", timed out" : "") + ")");

    auto report = parse_json(command.out, "snyk JSON output");

    adapter_detail::FindingCollector collector(ToolId::Snyk, snapshot);

    auto consume_vulnerability = [&](const nlohmann::json& vuln) {
      const std::string id = vuln.value("id", std::string());
      const std::string package_name =
          vuln.contains("packageName") ? vuln.at("packageName").get<std::string>()
                                       : vuln.value("name", std::string());
      const std::string version = vuln.value("version", std::string());
      const std::string pm = vuln.value("packageManager", std::string());
      const auto eco = ecosystem_from_package_manager(pm);
      if (id.empty() || package_name.empty() || version.empty() || !eco) {
        collector.skip("missing-fields", vuln);
        return;
      }
      NormalizedFinding finding;
      finding.ecosystem = *eco;
      try {
        finding.component = canonicalize_component(*eco, package_name);
      } catch (const Error& e) {
        collector.skip("coordinate", nlohmann::json{{"error", e.what()}, {"name", package_name}});
        return;
      }
      finding.version.raw = version;

      // Identifier normalization: prefer the CVE, keep everything as alias.
      std::vector<std::string> ids;
      const auto identifiers = vuln.value("identifiers", nlohmann::json::object());
      for (const char* key : {"CVE", "GHSA"})
        for (const auto& value : identifiers.value(key, nlohmann::json::array()))
          if (value.is_string() && !value.get<std::string>().empty())
            ids.push_back(value.get<std::string>());
      std::string canonical = ids.empty() ? id : ids.front();
      finding.vuln = VulnId(canonical);
      for (const auto& alias : ids)
        if (alias != canonical) finding.aliases.insert(VulnId(alias));
      if (id != canonical) finding.aliases.insert(VulnId(id));
      finding.basis = MatchBasis::Exact;
      collector.add(std::move(finding));
    };

    // `snyk sbom test --json` emits either one result object or an array of
    // per-target objects, each carrying a `vulnerabilities` array.
    if (report.is_array()) {
      for (const auto& target : report)
        for (const auto& vuln : target.value("vulnerabilities", nlohmann::json::array()))
          consume_vulnerability(vuln);
    } else {
      for (const auto& vuln : report.value("vulnerabilities", nlohmann::json::array()))
        consume_vulnerability(vuln);
    }

    auto result = collector.finish();
    result.raw_artifacts.push_back(std::move(report));
    return result;
  }
};

}  // namespace

std::unique_ptr<ToolAdapter> make_snyk_adapter() { return std::make_unique<SnykAdapter>(); }

}  // namespace scabench

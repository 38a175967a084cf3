#include "scabench/adapters.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/purl.hpp"

namespace scabench {

namespace {

// Trivy in SBOM mode: `trivy sbom --format json <sbom>`. Ecosystems come
// from purls; the affected range is approximated as "<FixedVersion" when a
// fixed version is reported, otherwise the finding stays exact.
class TrivyAdapter final : public ToolAdapter {
public:
  ToolId id() const override { return ToolId::Trivy; }

  ToolRunResult run(const Snapshot& snapshot, const SbomDocument& sbom, const AdapterConfig& cfg,
                    Transport&, CommandRunner& runner) override {
    cfg.validate();
    const std::string executable = cfg.endpoint.empty() ? "trivy" : cfg.endpoint;

    std::filesystem::path work =
        cfg.work_dir.empty() ? std::filesystem::temp_directory_path() : cfg.work_dir;
    std::filesystem::create_directories(work);
    const auto sbom_path = work / sbom.file_name();
    write_file(sbom_path, sbom.bytes);

    CommandSpec spec;
    spec.argv = {executable, "sbom", "--format", "json", sbom_path.string()};
    spec.timeout_seconds = cfg.timeout_seconds;

    CommandResult command;
    bool ok = false;
    for (int attempt = 0; attempt < cfg.retry && !ok; ++attempt) {
      command = runner.run(spec);
      ok = !command.timed_out && command.exit_code == 0;
    }
    if (!ok)
      throw_error(ErrorKind::Run, "trivy CLI failed after " + std::to_string(cfg.retry) +
                                      " attempts (exit " + std::to_string(command.exit_code) +
                                      (command.timed_out ? ", timed out" : "") + ")");

    auto report = parse_json(command.out, "trivy JSON report");

    adapter_detail::FindingCollector collector(ToolId::Trivy, snapshot);
    for (const auto& result_block : report.value("Results", nlohmann::json::array())) {
      for (const auto& vuln : result_block.value("Vulnerabilities", nlohmann::json::array())) {
        const std::string id = vuln.value("VulnerabilityID", std::string());
        std::string purl_text;
        if (vuln.contains("PkgIdentifier"))
          purl_text = vuln.at("PkgIdentifier").value("PURL", std::string());
        const std::string installed = vuln.value("InstalledVersion", std::string());
        if (id.empty() || purl_text.empty()) {
          collector.skip("missing-fields", vuln);
          continue;
        }
        try {
          auto [eco, comp, version] = from_purl(PackageUrl::parse(purl_text));
          NormalizedFinding finding;
          finding.ecosystem = eco;
          finding.component = comp;
          finding.version = installed.empty() ? version : VersionRef{installed, {}, false};
          finding.vuln = VulnId(id);

          std::string fixed = vuln.value("FixedVersion", std::string());
          if (!fixed.empty()) {
            // Multi-target fix lists ("1.2.3, 2.0.1"): the first entry is
            // the conservative bound.
            auto comma = fixed.find(',');
            if (comma != std::string::npos) fixed = fixed.substr(0, comma);
            while (!fixed.empty() && fixed.front() == ' ') fixed.erase(fixed.begin());
            while (!fixed.empty() && fixed.back() == ' ') fixed.pop_back();
            finding.basis = MatchBasis::Range;
            finding.affected_range = "<" + fixed;
          } else {
            finding.basis = MatchBasis::Exact;
          }
          collector.add(std::move(finding));
        } catch (const Error& e) {
          collector.skip("purl", nlohmann::json{{"error", e.what()}, {"purl", purl_text}});
        }
      }
    }

    auto result = collector.finish();
    result.raw_artifacts.push_back(std::move(report));
    return result;
  }
};

}  // namespace

std::unique_ptr<ToolAdapter> make_trivy_adapter() { return std::make_unique<TrivyAdapter>(); }

}  // namespace scabench

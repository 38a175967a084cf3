#include "scabench/adapters.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/versions.hpp"

namespace scabench {

namespace {

std::string gh_ecosystem(EcosystemId e) {
  switch (e) {
    case EcosystemId::Maven: return "MAVEN";
    case EcosystemId::Npm: return "NPM";
    case EcosystemId::NuGet: return "NUGET";
    case EcosystemId::PyPI: return "PIP";
  }
  return "NPM";
}

constexpr const char* kQuery = R"(query($ecosystem: SecurityAdvisoryEcosystem!, $package: String!, $after: String) {
  securityVulnerabilities(ecosystem: $ecosystem, package: $package, first: 100, after: $after) {
    nodes {
      advisory { ghsaId identifiers { type value } }
      vulnerableVersionRange
      package { name ecosystem }
    }
    pageInfo { hasNextPage endCursor }
  }
})";

// GitHub Advisory Database over GraphQL: one advisory lookup per
// ground-truth tuple, strict range evaluation through version-semantics,
// no fuzzy matching.
class GithubAdapter final : public ToolAdapter {
public:
  ToolId id() const override { return ToolId::Github; }

  ToolRunResult run(const Snapshot& snapshot, const SbomDocument&, const AdapterConfig& cfg,
                    Transport& transport, CommandRunner&) override {
    cfg.validate();
    const std::string base =
        cfg.endpoint.empty() ? std::string("https://api.github.com") : cfg.endpoint;
    const std::string token = adapter_detail::resolve_env(cfg, "token", "GITHUB_TOKEN");

    adapter_detail::FindingCollector collector(ToolId::Github, snapshot);
    ToolRunResult result;

    // One lookup per unique ground-truth component-version tuple.
    std::vector<std::tuple<EcosystemId, ComponentRef, VersionRef>> tuples;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& e : snapshot.entries)
      if (seen.insert({to_string(e.ecosystem), e.component.canonical_key(), e.version.raw})
              .second)
        tuples.emplace_back(e.ecosystem, e.component, e.version);

    for (const auto& [eco, component, version_ref] : tuples) {
      struct {
        EcosystemId ecosystem;
        ComponentRef component;
        VersionRef version;
      } e{eco, component, version_ref};
      ParsedVersion version;
      try {
        version = parse_version(e.ecosystem, e.version.raw);
      } catch (const Error& err) {
        collector.skip("version-parse",
                       nlohmann::json{{"error", err.what()}, {"version", e.version.raw}});
        continue;
      }

      std::string cursor;
      bool more = true;
      while (more) {
        nlohmann::json variables{{"ecosystem", gh_ecosystem(e.ecosystem)},
                                 {"package", e.component.coordinate()}};
        if (!cursor.empty()) variables["after"] = cursor;

        HttpRequest request;
        request.method = "POST";
        request.url = base + "/graphql";
        if (!token.empty()) request.headers["Authorization"] = "Bearer " + token;
        request.body =
            canonical_dump(nlohmann::json{{"query", kQuery}, {"variables", variables}});
        HttpResponse response = transport.send(request);
        if (response.status != 200)
          throw_error(ErrorKind::Run,
                      "github graphql failed with status " + std::to_string(response.status));
        auto body = parse_json(response.body, "github graphql response");
        if (body.contains("errors"))
          throw_error(ErrorKind::Run, "github graphql errors: " + body.at("errors").dump());
        result.raw_artifacts.push_back(body);

        const auto& sv = body.at("data").at("securityVulnerabilities");
        for (const auto& node : sv.value("nodes", nlohmann::json::array())) {
          const std::string range_text = node.value("vulnerableVersionRange", std::string());
          const auto advisory = node.value("advisory", nlohmann::json::object());
          const std::string ghsa = advisory.value("ghsaId", std::string());
          if (ghsa.empty()) {
            collector.skip("missing-id", node);
            continue;
          }
          bool covered = false;
          try {
            covered = satisfies(version, parse_range(e.ecosystem, range_text));
          } catch (const Error& err) {
            collector.skip("range-parse",
                           nlohmann::json{{"error", err.what()}, {"range", range_text}});
            continue;
          }
          if (!covered) {
            // Advisory exists for the package but not this version; strict
            // evaluation reports nothing.
            collector.skip("range-miss",
                           nlohmann::json{{"ghsa", ghsa}, {"range", range_text}});
            continue;
          }
          NormalizedFinding finding;
          finding.ecosystem = e.ecosystem;
          finding.component = e.component;
          finding.version = e.version;
          finding.vuln = VulnId(ghsa);
          for (const auto& ident : advisory.value("identifiers", nlohmann::json::array())) {
            const std::string value = ident.value("value", std::string());
            if (!value.empty() && value != ghsa) finding.aliases.insert(VulnId(value));
          }
          finding.basis = MatchBasis::Range;
          finding.affected_range = range_text;
          collector.add(std::move(finding));
        }
        const auto page = sv.value("pageInfo", nlohmann::json::object());
        more = page.value("hasNextPage", false);
        cursor = page.value("endCursor", std::string());
        if (cursor.empty()) more = false;
      }
    }

    auto finished = collector.finish();
    finished.raw_artifacts = std::move(result.raw_artifacts);
    return finished;
  }
};

}  // namespace

std::unique_ptr<ToolAdapter> make_github_adapter() { return std::make_unique<GithubAdapter>(); }

}  // namespace scabench

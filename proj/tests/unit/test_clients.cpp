#include <doctest.h>

#include "scabench/clients.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"

using namespace scabench;

namespace {

// In-memory OSV: querybatch plus per-id records, with optional pagination
// (ids split across pages of `page_size`).
class FakeOsvTransport : public Transport {
public:
  std::map<std::string, std::vector<std::string>> ids_by_coordinate;  // "name@version"
  std::map<std::string, std::vector<std::string>> aliases_by_id;
  size_t page_size = 1000;
  int batch_requests = 0;

  HttpResponse send(const HttpRequest& request) override {
    HttpResponse response;
    response.status = 200;
    if (request.url.find("/v1/querybatch") != std::string::npos) {
      ++batch_requests;
      auto body = parse_json(request.body, "querybatch");
      auto results = nlohmann::json::array();
      for (const auto& q : body.at("queries")) {
        const std::string key = q.at("package").at("name").get<std::string>() + "@" +
                                q.at("version").get<std::string>();
        auto it = ids_by_coordinate.find(key);
        std::vector<std::string> ids =
            it == ids_by_coordinate.end() ? std::vector<std::string>{} : it->second;
        size_t start = 0;
        if (q.contains("page_token")) start = std::stoul(q.at("page_token").get<std::string>());
        nlohmann::json result = nlohmann::json::object();
        auto vulns = nlohmann::json::array();
        const size_t end = std::min(ids.size(), start + page_size);
        for (size_t i = start; i < end; ++i)
          vulns.push_back(nlohmann::json{{"id", ids[i]}, {"modified", "2026-03-28T00:00:00Z"}});
        if (!vulns.empty()) result["vulns"] = vulns;
        if (end < ids.size()) result["next_page_token"] = std::to_string(end);
        results.push_back(result);
      }
      response.body = canonical_dump(nlohmann::json{{"results", results}});
      return response;
    }
    const std::string prefix = "/v1/vulns/";
    auto pos = request.url.find(prefix);
    if (pos != std::string::npos) {
      const std::string id = request.url.substr(pos + prefix.size());
      if (!aliases_by_id.count(id)) {
        response.status = 404;
        return response;
      }
      nlohmann::json record{{"id", id}, {"aliases", aliases_by_id.at(id)}};
      response.body = canonical_dump(record);
      return response;
    }
    response.status = 500;
    return response;
  }
};

std::pair<ComponentRef, VersionRef> coordinate(EcosystemId eco, const std::string& name,
                                               const std::string& version) {
  return {canonicalize_component(eco, name), VersionRef{version, {}, false}};
}

}  // namespace

TEST_CASE("osv batch splitting equals per-item queries") {
  FakeOsvTransport transport;
  std::vector<std::pair<ComponentRef, VersionRef>> items;
  for (int i = 0; i < 20; ++i) {
    const std::string name = "pkg" + std::to_string(i);
    items.push_back(coordinate(EcosystemId::Npm, name, "1.0.0"));
    if (i % 3 == 0) {
      transport.ids_by_coordinate[name + "@1.0.0"] = {"GHSA-id-" + std::to_string(i)};
      transport.aliases_by_id["GHSA-id-" + std::to_string(i)] = {
          "CVE-2026-" + std::to_string(1000 + i)};
    }
  }

  OsvClient batched(transport, {}, 7);  // forces ceil(20/7) = 3 sub-batches
  auto batched_results = batched.query_batch(items);
  const int batched_requests = transport.batch_requests;
  CHECK(batched_requests == 3);

  transport.batch_requests = 0;
  OsvClient single(transport, {}, 1);
  auto single_results = single.query_batch(items);
  CHECK(transport.batch_requests == 20);

  REQUIRE(batched_results.size() == single_results.size());
  for (size_t i = 0; i < items.size(); ++i) {
    REQUIRE(batched_results[i].size() == single_results[i].size());
    for (size_t k = 0; k < batched_results[i].size(); ++k) {
      CHECK(batched_results[i][k].id == single_results[i][k].id);
      CHECK(batched_results[i][k].aliases == single_results[i][k].aliases);
    }
  }
  // alias sets are complete
  CHECK(batched_results[0][0].aliases.count(VulnId("CVE-2026-1000")) == 1);
}

TEST_CASE("osv pagination tokens are followed to exhaustion") {
  FakeOsvTransport transport;
  transport.page_size = 2;
  transport.ids_by_coordinate["tornado@6.4.2"] = {"GHSA-a-a-a", "GHSA-b-b-b", "GHSA-c-c-c",
                                                  "GHSA-d-d-d", "GHSA-e-e-e"};
  for (const auto& id : transport.ids_by_coordinate["tornado@6.4.2"])
    transport.aliases_by_id[id] = {};

  OsvClient client(transport);
  auto results = client.query_batch({coordinate(EcosystemId::PyPI, "tornado", "6.4.2")});
  REQUIRE(results.size() == 1);
  CHECK(results[0].size() == 5);
  CHECK(transport.batch_requests == 3);  // pages of 2, 2, 1
}

TEST_CASE("osv vuln fetch surfaces not-found") {
  FakeOsvTransport transport;
  OsvClient client(transport);
  CHECK_THROWS_AS((void)client.fetch_vuln(VulnId("GHSA-none")), Error);
}

namespace {

class MapTransport : public Transport {
public:
  std::map<std::string, HttpResponse> by_url;  // method + " " + url
  HttpResponse send(const HttpRequest& request) override {
    auto it = by_url.find(request.method + " " + request.url);
    if (it == by_url.end()) {
      HttpResponse miss;
      miss.status = 404;
      return miss;
    }
    return it->second;
  }
};

HttpResponse json_response(const nlohmann::json& j) {
  HttpResponse r;
  r.status = 200;
  r.body = j.dump();
  return r;
}

}  // namespace

TEST_CASE("npm listing sorts ascending and keeps timestamps") {
  MapTransport transport;
  transport.by_url["GET https://registry.npmjs.org/vite"] = json_response(nlohmann::json{
      {"versions",
       {{"0.2.0", nlohmann::json::object()},
        {"0.1.0", nlohmann::json::object()},
        {"5.0.0-beta.1", nlohmann::json::object()},
        {"not-a-version", nlohmann::json::object()},
        {"4.5.0", nlohmann::json::object()}}},
      {"time",
       {{"0.1.0", "2020-06-02T12:00:00.000Z"},
        {"0.2.0", "2020-06-10T12:00:00.000Z"},
        {"4.5.0", "2023-11-16T08:30:00.000Z"},
        {"5.0.0-beta.1", "2023-11-01T00:00:00.000Z"}}},
  });

  RegistryClient client(transport);
  auto releases = client.list_versions(canonicalize_component(EcosystemId::Npm, "vite"));
  REQUIRE(releases.size() == 4);  // junk version dropped
  CHECK(releases[0].version.raw == "0.1.0");
  CHECK(releases[0].version.released_at == "2020-06-02T12:00:00Z");
  CHECK(releases[3].version.raw == "5.0.0-beta.1");
  CHECK(releases[2].version.raw == "4.5.0");
  CHECK(releases[3].version.prerelease);
  CHECK_FALSE(releases[2].version.prerelease);

  CHECK_THROWS_AS((void)client.list_versions(canonicalize_component(EcosystemId::Npm, "nope")),
                  Error);
}

TEST_CASE("pypi listing honors yanked flags and earliest upload time") {
  MapTransport transport;
  transport.by_url["GET https://pypi.org/pypi/tornado/json"] = json_response(nlohmann::json{
      {"releases",
       {{"6.4.2", nlohmann::json::array({{{"upload_time_iso_8601", "2024-11-22T10:00:00.000Z"},
                                          {"yanked", false}}})},
        {"6.5.1",
         nlohmann::json::array({{{"upload_time_iso_8601", "2025-06-01T00:00:00Z"},
                                 {"yanked", true}}})},
        {"6.5b1", nlohmann::json::array({{{"upload_time_iso_8601", "2025-05-01T00:00:00Z"},
                                          {"yanked", false}}})},
        {"6.5", nlohmann::json::array()}}},
  });

  RegistryClient client(transport);
  auto releases = client.list_versions(canonicalize_component(EcosystemId::PyPI, "tornado"));
  REQUIRE(releases.size() == 4);
  CHECK(releases[0].version.raw == "6.4.2");
  CHECK(releases[1].version.raw == "6.5b1");
  CHECK(releases[1].version.prerelease);
  CHECK(releases[2].version.raw == "6.5");
  CHECK_FALSE(releases[2].version.released_at.has_value());  // no files, no date
  CHECK(releases[3].version.raw == "6.5.1");
  CHECK(releases[3].yanked);
}

TEST_CASE("maven listing parses metadata and per-version pom dates") {
  MapTransport transport;
  transport.by_url
      ["GET https://repo1.maven.org/maven2/org/springframework/spring-expression/"
       "maven-metadata.xml"] = [] {
    HttpResponse r;
    r.status = 200;
    r.body = R"(<metadata><groupId>org.springframework</groupId>
      <artifactId>spring-expression</artifactId>
      <versioning><versions>
        <version>5.3.0</version><version>5.2.0</version><version>6.0.0-M1</version>
      </versions></versioning></metadata>)";
    return r;
  }();
  auto pom = [&](const std::string& version, const std::string& date) {
    HttpResponse r;
    r.status = 200;
    r.headers["Last-Modified"] = date;
    transport.by_url["HEAD https://repo1.maven.org/maven2/org/springframework/"
                     "spring-expression/" +
                     version + "/spring-expression-" + version + ".pom"] = r;
  };
  pom("5.3.0", "Tue, 27 Oct 2020 10:00:00 GMT");
  pom("5.2.0", "Mon, 30 Sep 2019 09:00:00 GMT");

  RegistryClient client(transport);
  auto releases = client.list_versions(
      canonicalize_component(EcosystemId::Maven, "org.springframework:spring-expression"));
  REQUIRE(releases.size() == 3);
  CHECK(releases[0].version.raw == "5.2.0");
  CHECK(releases[0].version.released_at == "2019-09-30T09:00:00Z");
  CHECK(releases[1].version.raw == "5.3.0");
  CHECK(releases[1].version.released_at == "2020-10-27T10:00:00Z");
  CHECK(releases[2].version.raw == "6.0.0-M1");
  CHECK(releases[2].version.prerelease);
  CHECK_FALSE(releases[2].version.released_at.has_value());  // no pom fixture
}

TEST_CASE("nuget listing walks registration pages and drops unlisted versions") {
  MapTransport transport;
  transport.by_url
      ["GET https://api.nuget.org/v3/registration5-gz-semver2/microsoft.data.sqlclient/"
       "index.json"] = json_response(nlohmann::json{
      {"items",
       nlohmann::json::array(
           {{{"items",
              nlohmann::json::array(
                  {{{"catalogEntry",
                     {{"version", "1.0.0"}, {"published", "2019-08-28T00:00:00Z"},
                      {"listed", true}}}},
                   {{"catalogEntry",
                     {{"version", "1.1.0"}, {"published", "1900-01-01T00:00:00Z"},
                      {"listed", false}}}}})}},
            {{"@id", "https://api.nuget.org/v3/reg-page-2.json"}}})}});
  transport.by_url["GET https://api.nuget.org/v3/reg-page-2.json"] =
      json_response(nlohmann::json{
          {"items", nlohmann::json::array(
                        {{{"catalogEntry",
                           {{"version", "2.0.0"}, {"published", "2020-06-16T00:00:00Z"},
                            {"listed", true}}}},
                         {{"catalogEntry",
                           {{"version", "2.1.0-preview1"},
                            {"published", "2020-07-01T00:00:00Z"},
                            {"listed", true}}}}})}});

  RegistryClient client(transport);
  auto releases = client.list_versions(
      canonicalize_component(EcosystemId::NuGet, "Microsoft.Data.SqlClient"));
  REQUIRE(releases.size() == 4);
  CHECK(releases[0].version.raw == "1.0.0");
  CHECK_FALSE(releases[0].yanked);
  CHECK(releases[1].version.raw == "1.1.0");
  CHECK(releases[1].yanked);  // unlisted
  CHECK(releases[3].version.raw == "2.1.0-preview1");
  CHECK(releases[3].version.prerelease);
}

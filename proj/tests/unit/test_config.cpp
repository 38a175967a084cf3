#include <doctest.h>

#include "scabench/config.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"

using namespace scabench;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  write_file(path, content);
  return path;
}

}  // namespace

TEST_CASE("toml subset: tables, arrays, scalars, comments") {
  auto j = toml_to_json(R"(
# run configuration
transport = "replay"   # comment after value
fixtures = "tests/fixtures/osv_corpus"
attempts_max = 3
repeats = 2
tools = ["dtrack", "trivy"]

[build]
version_cap = 10
target_entries = 250
include_prereleases = false
window_start = "2020-01-01T00:00:00Z"

[build.components]
npm = ["vite", "esbuild"]
PyPI = ["tornado"]

[adapters.oss-index]
batch_size = 128
)");
  CHECK(j.at("transport") == "replay");
  CHECK(j.at("attempts_max") == 3);
  CHECK(j.at("tools").size() == 2);
  CHECK(j.at("build").at("version_cap") == 10);
  CHECK(j.at("build").at("include_prereleases") == false);
  CHECK(j.at("build").at("components").at("npm")[1] == "esbuild");
  CHECK(j.at("adapters").at("oss-index").at("batch_size") == 128);

  CHECK_THROWS_AS(toml_to_json("key value-without-equals"), Error);
  CHECK_THROWS_AS(toml_to_json("[unclosed"), Error);
}

TEST_CASE("config auto-detects JSON and TOML") {
  const std::string json_text = R"({
    "transport": "replay",
    "fixtures": "fx",
    "tools": ["snyk"],
    "build": {"version_cap": 5, "target_entries": 10,
              "components": {"npm": ["vite"]}},
    "adapters": {"snyk": {"timeout_seconds": 60, "retry": 2}}
  })";
  auto json_cfg = load_run_config(write_temp("scabench-cfg.json", json_text));
  CHECK(json_cfg.transport_mode == TransportMode::Replay);
  CHECK(json_cfg.build.version_cap == 5);
  CHECK(json_cfg.tools == std::vector<ToolId>{ToolId::Snyk});
  CHECK(json_cfg.adapters.at(ToolId::Snyk).timeout_seconds == 60);
  CHECK(json_cfg.adapters.at(ToolId::Snyk).retry == 2);
  CHECK(json_cfg.adapters.at(ToolId::Snyk).tool == ToolId::Snyk);

  const std::string toml_text = R"(
transport = "record"
fixtures = "fx"
[build]
version_cap = 5
target_entries = 10
[build.components]
npm = ["vite"]
)";
  auto toml_cfg = load_run_config(write_temp("scabench-cfg.toml", toml_text));
  CHECK(toml_cfg.transport_mode == TransportMode::Record);
  CHECK(toml_cfg.build.version_cap == 5);
  CHECK(toml_cfg.build.components.at(EcosystemId::Npm) == std::vector<std::string>{"vite"});

  // the two spellings agree
  CHECK(json_cfg.build.components.at(EcosystemId::Npm) ==
        toml_cfg.build.components.at(EcosystemId::Npm));
}

TEST_CASE("invalid build settings are rejected at load time") {
  auto path = write_temp("scabench-bad.json", R"({"build": {"version_cap": 0}})");
  CHECK_THROWS_AS((void)load_run_config(path), Error);
}

TEST_CASE("adapter config round-trips through JSON") {
  AdapterConfig cfg;
  cfg.tool = ToolId::OssIndex;
  cfg.endpoint = "https://ossindex.sonatype.org";
  cfg.credential_env = {{"user", "OSSINDEX_USER"}, {"token", "OSSINDEX_TOKEN"}};
  cfg.batch_size = 128;
  nlohmann::json j = cfg;
  auto back = j.get<AdapterConfig>();
  CHECK(back.endpoint == cfg.endpoint);
  CHECK(back.credential_env == cfg.credential_env);
  CHECK(back.batch_size == 128);
  // secrets are referenced by variable name, never inlined
  CHECK(j.dump().find("OSSINDEX_TOKEN") != std::string::npos);
}

#pragma once

#include <set>
#include <utility>
#include <vector>

#include "scabench/model.hpp"
#include "scabench/transport.hpp"

namespace scabench {

// One vulnerability record as returned by OSV, with the alias set resolved.
struct OsvVulnRecord {
  VulnId id;
  std::set<VulnId> aliases;
  nlohmann::json raw;
};

struct OsvEndpoints {
  std::string base_url = "https://api.osv.dev";
};

// Client for the OSV v1 API: querybatch with pagination + per-id record
// fetch to complete alias sets. Sub-batches are capped at `batch_size`;
// the result list is always aligned with the input order.
class OsvClient {
public:
  explicit OsvClient(Transport& transport, OsvEndpoints endpoints = {}, int batch_size = 100);

  std::vector<std::vector<OsvVulnRecord>> query_batch(
      const std::vector<std::pair<ComponentRef, VersionRef>>& items);

  OsvVulnRecord fetch_vuln(const VulnId& id);

private:
  Transport& transport_;
  OsvEndpoints endpoints_;
  int batch_size_;
};

struct RegistryRelease {
  ComponentRef component;
  VersionRef version;
  bool yanked = false;
};

struct RegistryEndpoints {
  std::string npm = "https://registry.npmjs.org";
  std::string pypi = "https://pypi.org";
  std::string maven = "https://repo1.maven.org/maven2";
  std::string nuget = "https://api.nuget.org/v3/registration5-gz-semver2";
};

// Version listings from the four package registries, sorted ascending by
// the ecosystem ordering. Versions that fail the ecosystem grammar are
// dropped (they could never be ordered or matched).
class RegistryClient {
public:
  explicit RegistryClient(Transport& transport, RegistryEndpoints endpoints = {});

  std::vector<RegistryRelease> list_versions(const ComponentRef& component);

private:
  std::vector<RegistryRelease> list_npm(const ComponentRef& component);
  std::vector<RegistryRelease> list_pypi(const ComponentRef& component);
  std::vector<RegistryRelease> list_maven(const ComponentRef& component);
  std::vector<RegistryRelease> list_nuget(const ComponentRef& component);

  Transport& transport_;
  RegistryEndpoints endpoints_;
};

}  // namespace scabench

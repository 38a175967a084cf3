#pragma once

#include <optional>
#include <string>
#include <tuple>

#include "scabench/model.hpp"

namespace scabench {

// Package URL (purl) coordinate: pkg:<type>/[<namespace>/]<name>@<version>
// with percent-encoding of reserved characters in each segment.
struct PackageUrl {
  std::string type;
  std::optional<std::string> ns;
  std::string name;
  std::string version;

  std::string render() const;
  static PackageUrl parse(const std::string& purl);

  friend bool operator==(const PackageUrl& a, const PackageUrl& b) {
    return a.type == b.type && a.ns == b.ns && a.name == b.name && a.version == b.version;
  }
};

// Ecosystem tuple -> purl. Maven groups become the namespace; scoped npm
// names split into scope namespace + bare name.
PackageUrl to_purl(EcosystemId e, const ComponentRef& c, const VersionRef& v);

// purl -> ecosystem tuple; rejects purl types outside the covered four.
std::tuple<EcosystemId, ComponentRef, VersionRef> from_purl(const PackageUrl& p);

}  // namespace scabench

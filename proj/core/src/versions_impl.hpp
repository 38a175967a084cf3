#pragma once

// Internal helpers shared by the per-ecosystem version grammars.

#include <compare>
#include <string>
#include <string_view>

#include "scabench/versions.hpp"

namespace scabench::detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

long long parse_ll(std::string_view s, EcosystemId eco, const std::string& raw);

// Dot-separated prerelease identifiers per the semver precedence rules:
// numeric identifiers
// sort below alphanumeric ones; a longer identifier list wins on prefix ties.
std::strong_ordering compare_semver_prerelease(const std::vector<TagId>& a,
                                               const std::vector<TagId>& b);

ParsedVersion parse_semver(EcosystemId eco, const std::string& s);
ParsedVersion parse_nuget(const std::string& s);
ParsedVersion parse_pep440(const std::string& s);
ParsedVersion parse_maven(const std::string& s);

std::strong_ordering compare_maven_items(const MavenItem* a, const MavenItem* b);
std::strong_ordering compare_pep440(const Pep440Key& a, const Pep440Key& b);

bool maven_has_prerelease_qualifier(const MavenItem& item);

}  // namespace scabench::detail

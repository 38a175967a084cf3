#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scabench/model.hpp"

namespace scabench {

// Ordering identifier inside a prerelease tag: numeric or alphanumeric.
using TagId = std::variant<long long, std::string>;

namespace detail {

// Numeric item kept as a normalized digit string so arbitrary-width
// version numbers never overflow. Ordering is (length, lexicographic).
struct MavenItem {
  enum class Kind { Int, Str, List };
  Kind kind = Kind::Int;
  std::string digits = "0";
  std::string text;
  std::vector<MavenItem> list;

  bool is_null() const;
};

struct SemverKey {
  std::array<long long, 3> nums{0, 0, 0};
  std::vector<TagId> pre;  // empty = final release
};

struct NugetKey {
  std::array<long long, 4> nums{0, 0, 0, 0};
  std::vector<TagId> pre;  // lowercased labels
};

struct Pep440Key {
  long long epoch = 0;
  std::vector<long long> release;       // trailing zeros trimmed for ordering
  int pre_rank = 0;                     // -1 dev-only sentinel, 0=a,1=b,2=rc, 3 = none
  long long pre_num = 0;
  long long post = -1;                  // -1 = absent
  bool has_dev = false;
  long long dev = 0;
  std::vector<TagId> local;             // ints order above strings here
};

struct MavenKey {
  MavenItem root;  // Kind::List
};

using OrderKey = std::variant<SemverKey, NugetKey, Pep440Key, MavenKey>;

}  // namespace detail

// A version parsed under its ecosystem's grammar. The raw string is kept
// byte-exact; ordering state lives in an internal key.
struct ParsedVersion {
  EcosystemId ecosystem = EcosystemId::Npm;
  std::string raw;
  std::vector<long long> release_segments;
  std::vector<TagId> prerelease;  // normalized display form; empty = none
  std::string metadata;           // ignored for ordering
  detail::OrderKey key;

  friend bool operator==(const ParsedVersion& a, const ParsedVersion& b);
};

// Parses s under the ecosystem grammar: semver for npm, PEP 440 for PyPI,
// ComparableVersion rules for Maven, SemVer2 with 4-part legacy for NuGet.
ParsedVersion parse_version(EcosystemId ecosystem, const std::string& s);

// Raw string back (parse is the left inverse of render).
std::string render(const ParsedVersion& v);

// Total order within one ecosystem; mixing ecosystems is a usage error.
std::strong_ordering compare(const ParsedVersion& a, const ParsedVersion& b);

bool is_prerelease(const ParsedVersion& v);

enum class CmpOp { Lt, Le, Gt, Ge, Eq };

std::string to_string(CmpOp op);

struct Comparator {
  CmpOp op = CmpOp::Eq;
  ParsedVersion bound;
};

// Conjunction of comparator clauses, or the OSV event form
// {introduced, fixed, last_affected}. fixed=F is the half-open upper
// bound [introduced, F).
struct VersionRange {
  EcosystemId ecosystem = EcosystemId::Npm;
  std::string raw;
  std::vector<Comparator> clauses;
  bool event_form = false;
  std::optional<ParsedVersion> introduced;
  std::optional<ParsedVersion> fixed;
  std::optional<ParsedVersion> last_affected;
};

// Text grammar: comma-separated comparator clauses, operators < <= > >= =,
// whitespace insignificant (e.g. ">=1.2.0, <1.3.5").
VersionRange parse_range(EcosystemId ecosystem, const std::string& text);

VersionRange range_from_events(EcosystemId ecosystem,
                               const std::optional<std::string>& introduced,
                               const std::optional<std::string>& fixed,
                               const std::optional<std::string>& last_affected);

// Membership is answered purely mathematically; pre-release policy is the
// caller's concern. An empty range is a usage error.
bool satisfies(const ParsedVersion& v, const VersionRange& r);

}  // namespace scabench

// Semver 2.0 grammar (npm) and the NuGet variant: SemVer2 release labels on
// top of a 4-part legacy numeric core, labels compared case-insensitively.

#include <algorithm>
#include <cctype>

#include "scabench/errors.hpp"
#include "versions_impl.hpp"

namespace scabench::detail {

namespace {

[[noreturn]] void fail(EcosystemId eco, const std::string& raw, const std::string& why) {
  throw_error(ErrorKind::Parse,
              "cannot parse " + to_string(eco) + " version '" + raw + "': " + why);
}

bool ident_char(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
}

std::vector<TagId> split_identifiers(std::string_view s, bool lowercase, EcosystemId eco,
                                     const std::string& raw) {
  std::vector<TagId> ids;
  size_t start = 0;
  while (start <= s.size()) {
    size_t dot = s.find('.', start);
    std::string part(s.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (part.empty()) fail(eco, raw, "empty prerelease identifier");
    for (char c : part)
      if (!ident_char(c)) fail(eco, raw, "bad character in prerelease identifier");
    if (all_digits(part)) {
      ids.emplace_back(parse_ll(part, eco, raw));
    } else {
      if (lowercase)
        std::transform(part.begin(), part.end(), part.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      ids.emplace_back(std::move(part));
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return ids;
}

// Shared core: numeric dot segments, optional -prerelease, optional +build.
ParsedVersion parse_semverish(EcosystemId eco, const std::string& s, size_t max_parts,
                              bool lowercase_labels) {
  std::string_view rest = s;
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
  while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
  if (!rest.empty() && (rest.front() == 'v' || rest.front() == 'V')) rest.remove_prefix(1);
  if (rest.empty()) fail(eco, s, "empty version");

  ParsedVersion v;
  v.ecosystem = eco;
  v.raw = s;

  size_t core_end = rest.find_first_of("-+");
  std::string_view core = rest.substr(0, core_end);

  size_t start = 0;
  while (true) {
    size_t dot = core.find('.', start);
    std::string_view part = core.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (!all_digits(part)) fail(eco, s, "release segment is not numeric");
    if (v.release_segments.size() == max_parts) fail(eco, s, "too many release segments");
    v.release_segments.push_back(parse_ll(part, eco, s));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }

  std::string_view tail = core_end == std::string_view::npos ? std::string_view{}
                                                             : rest.substr(core_end);
  if (!tail.empty() && tail.front() == '-') {
    tail.remove_prefix(1);
    size_t plus = tail.find('+');
    std::string_view pre = tail.substr(0, plus);
    if (pre.empty()) fail(eco, s, "empty prerelease tag");
    v.prerelease = split_identifiers(pre, lowercase_labels, eco, s);
    tail = plus == std::string_view::npos ? std::string_view{} : tail.substr(plus);
  }
  if (!tail.empty() && tail.front() == '+') {
    v.metadata = std::string(tail.substr(1));
    if (v.metadata.empty()) fail(eco, s, "empty build metadata");
    for (char c : v.metadata)
      if (!ident_char(c) && c != '.') fail(eco, s, "bad character in build metadata");
  } else if (!tail.empty()) {
    fail(eco, s, "unexpected trailing characters");
  }
  return v;
}

}  // namespace

long long parse_ll(std::string_view s, EcosystemId eco, const std::string& raw) {
  // Leading zeros are tolerated and compared numerically.
  long long value = 0;
  for (char c : s) {
    if (value > (9223372036854775807LL - 9) / 10)
      fail(eco, raw, "numeric segment out of range");
    value = value * 10 + (c - '0');
  }
  return value;
}

std::strong_ordering compare_semver_prerelease(const std::vector<TagId>& a,
                                               const std::vector<TagId>& b) {
  // No prerelease orders above any prerelease.
  if (a.empty() && b.empty()) return std::strong_ordering::equal;
  if (a.empty()) return std::strong_ordering::greater;
  if (b.empty()) return std::strong_ordering::less;
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    const bool a_num = std::holds_alternative<long long>(a[i]);
    const bool b_num = std::holds_alternative<long long>(b[i]);
    if (a_num && b_num) {
      if (auto c = std::get<long long>(a[i]) <=> std::get<long long>(b[i]); c != 0) return c;
    } else if (a_num != b_num) {
      return a_num ? std::strong_ordering::less : std::strong_ordering::greater;
    } else {
      if (auto c = std::get<std::string>(a[i]).compare(std::get<std::string>(b[i])); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return a.size() <=> b.size();
}

ParsedVersion parse_semver(EcosystemId eco, const std::string& s) {
  ParsedVersion v = parse_semverish(eco, s, 3, false);
  SemverKey key;
  for (size_t i = 0; i < v.release_segments.size(); ++i) key.nums[i] = v.release_segments[i];
  key.pre = v.prerelease;
  v.key = std::move(key);
  return v;
}

ParsedVersion parse_nuget(const std::string& s) {
  ParsedVersion v = parse_semverish(EcosystemId::NuGet, s, 4, true);
  NugetKey key;
  for (size_t i = 0; i < v.release_segments.size(); ++i) key.nums[i] = v.release_segments[i];
  key.pre = v.prerelease;
  v.key = std::move(key);
  return v;
}

}  // namespace scabench::detail

#include "scabench/versions.hpp"

#include <algorithm>

#include "scabench/errors.hpp"
#include "versions_impl.hpp"

namespace scabench {

using detail::MavenKey;
using detail::NugetKey;
using detail::Pep440Key;
using detail::SemverKey;

ParsedVersion parse_version(EcosystemId ecosystem, const std::string& s) {
  if (s.find_first_not_of(" \t\r\n") == std::string::npos)
    throw_error(ErrorKind::Parse, "cannot parse empty version string");
  switch (ecosystem) {
    case EcosystemId::Npm: return detail::parse_semver(EcosystemId::Npm, s);
    case EcosystemId::NuGet: return detail::parse_nuget(s);
    case EcosystemId::PyPI: return detail::parse_pep440(s);
    case EcosystemId::Maven: return detail::parse_maven(s);
  }
  throw_error(ErrorKind::Usage, "invalid ecosystem value");
}

std::string render(const ParsedVersion& v) { return v.raw; }

std::strong_ordering compare(const ParsedVersion& a, const ParsedVersion& b) {
  if (a.ecosystem != b.ecosystem)
    throw_error(ErrorKind::Usage, "cannot compare versions across ecosystems (" +
                                      to_string(a.ecosystem) + " vs " + to_string(b.ecosystem) +
                                      ")");
  switch (a.ecosystem) {
    case EcosystemId::Npm: {
      const auto& ka = std::get<SemverKey>(a.key);
      const auto& kb = std::get<SemverKey>(b.key);
      if (auto c = ka.nums <=> kb.nums; c != 0) return c;
      return detail::compare_semver_prerelease(ka.pre, kb.pre);
    }
    case EcosystemId::NuGet: {
      const auto& ka = std::get<NugetKey>(a.key);
      const auto& kb = std::get<NugetKey>(b.key);
      if (auto c = ka.nums <=> kb.nums; c != 0) return c;
      return detail::compare_semver_prerelease(ka.pre, kb.pre);
    }
    case EcosystemId::PyPI:
      return detail::compare_pep440(std::get<Pep440Key>(a.key), std::get<Pep440Key>(b.key));
    case EcosystemId::Maven:
      return detail::compare_maven_items(&std::get<MavenKey>(a.key).root,
                                         &std::get<MavenKey>(b.key).root);
  }
  throw_error(ErrorKind::Usage, "invalid ecosystem value");
}

bool operator==(const ParsedVersion& a, const ParsedVersion& b) {
  return a.ecosystem == b.ecosystem && compare(a, b) == std::strong_ordering::equal;
}

bool is_prerelease(const ParsedVersion& v) {
  switch (v.ecosystem) {
    case EcosystemId::Npm: return !std::get<SemverKey>(v.key).pre.empty();
    case EcosystemId::NuGet: return !std::get<NugetKey>(v.key).pre.empty();
    case EcosystemId::PyPI: {
      const auto& k = std::get<Pep440Key>(v.key);
      return k.has_dev || (k.pre_rank >= 0 && k.pre_rank < 3);
    }
    case EcosystemId::Maven:
      return detail::maven_has_prerelease_qualifier(std::get<MavenKey>(v.key).root);
  }
  return false;
}

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "=";
  }
  return "=";
}

namespace {

std::string strip_ws(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != ' ' && c != '\t') out.push_back(c);
  return out;
}

bool op_matches(CmpOp op, std::strong_ordering c) {
  switch (op) {
    case CmpOp::Lt: return c == std::strong_ordering::less;
    case CmpOp::Le: return c != std::strong_ordering::greater;
    case CmpOp::Gt: return c == std::strong_ordering::greater;
    case CmpOp::Ge: return c != std::strong_ordering::less;
    case CmpOp::Eq: return c == std::strong_ordering::equal;
  }
  return false;
}

}  // namespace

VersionRange parse_range(EcosystemId ecosystem, const std::string& text) {
  VersionRange range;
  range.ecosystem = ecosystem;
  range.raw = text;

  const std::string stripped = strip_ws(text);
  size_t start = 0;
  while (start < stripped.size()) {
    size_t comma = stripped.find(',', start);
    std::string clause = stripped.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!clause.empty()) {
      Comparator cmp;
      size_t skip = 0;
      if (clause.rfind("<=", 0) == 0) {
        cmp.op = CmpOp::Le;
        skip = 2;
      } else if (clause.rfind(">=", 0) == 0) {
        cmp.op = CmpOp::Ge;
        skip = 2;
      } else if (clause.rfind("==", 0) == 0) {
        cmp.op = CmpOp::Eq;
        skip = 2;
      } else if (clause[0] == '<') {
        cmp.op = CmpOp::Lt;
        skip = 1;
      } else if (clause[0] == '>') {
        cmp.op = CmpOp::Gt;
        skip = 1;
      } else if (clause[0] == '=') {
        cmp.op = CmpOp::Eq;
        skip = 1;
      } else {
        throw_error(ErrorKind::Parse, "range clause '" + clause + "' has no comparator");
      }
      const std::string bound = clause.substr(skip);
      if (bound.empty())
        throw_error(ErrorKind::Parse, "range clause '" + clause + "' has no version");
      cmp.bound = parse_version(ecosystem, bound);
      range.clauses.push_back(std::move(cmp));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return range;
}

VersionRange range_from_events(EcosystemId ecosystem,
                               const std::optional<std::string>& introduced,
                               const std::optional<std::string>& fixed,
                               const std::optional<std::string>& last_affected) {
  VersionRange range;
  range.ecosystem = ecosystem;
  range.event_form = true;
  std::string raw;
  if (introduced) {
    // OSV uses introduced "0" for "since the beginning"; no lower bound then.
    if (*introduced != "0") range.introduced = parse_version(ecosystem, *introduced);
    raw += ">=" + *introduced;
  }
  if (fixed) {
    range.fixed = parse_version(ecosystem, *fixed);
    if (!raw.empty()) raw += ",";
    raw += "<" + *fixed;
  }
  if (last_affected) {
    range.last_affected = parse_version(ecosystem, *last_affected);
    if (!raw.empty()) raw += ",";
    raw += "<=" + *last_affected;
  }
  range.raw = raw;
  return range;
}

bool satisfies(const ParsedVersion& v, const VersionRange& r) {
  if (v.ecosystem != r.ecosystem)
    throw_error(ErrorKind::Usage, "range and version ecosystems differ");
  if (r.event_form) {
    if (!r.introduced && !r.fixed && !r.last_affected && r.raw.empty())
      throw_error(ErrorKind::Usage, "empty event range");
    if (r.introduced && compare(v, *r.introduced) == std::strong_ordering::less) return false;
    if (r.fixed && compare(v, *r.fixed) != std::strong_ordering::less) return false;
    if (r.last_affected && compare(v, *r.last_affected) == std::strong_ordering::greater)
      return false;
    return true;
  }
  if (r.clauses.empty())
    throw_error(ErrorKind::Usage, "range '" + r.raw + "' has no clauses");
  return std::all_of(r.clauses.begin(), r.clauses.end(), [&](const Comparator& c) {
    return op_matches(c.op, compare(v, c.bound));
  });
}

}  // namespace scabench

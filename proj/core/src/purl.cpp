#include "scabench/purl.hpp"

#include <algorithm>
#include <cctype>

#include "scabench/errors.hpp"

namespace scabench {

namespace {

bool unreserved(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_' ||
         c == '~' || c == '+';
}

std::string pct_encode(std::string_view s) {
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (unreserved(c)) {
      out.push_back(c);
    } else {
      out.push_back('%');
      out.push_back(digits[static_cast<unsigned char>(c) >> 4]);
      out.push_back(digits[static_cast<unsigned char>(c) & 0x0f]);
    }
  }
  return out;
}

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string pct_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      int hi = hex_val(s[i + 1]), lo = hex_val(s[i + 2]);
      if (hi < 0 || lo < 0) throw_error(ErrorKind::Decode, "bad percent escape in purl");
      out.push_back(static_cast<char>((hi << 4) | lo));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

std::string PackageUrl::render() const {
  std::string out = "pkg:" + type + "/";
  if (ns) {
    // Namespace segments are encoded individually; '/' separates them.
    std::string_view rest = *ns;
    while (!rest.empty()) {
      size_t slash = rest.find('/');
      out += pct_encode(rest.substr(0, slash));
      out.push_back('/');
      if (slash == std::string_view::npos) break;
      rest.remove_prefix(slash + 1);
    }
  }
  out += pct_encode(name);
  out.push_back('@');
  out += pct_encode(version);
  return out;
}

PackageUrl PackageUrl::parse(const std::string& purl) {
  std::string_view rest = purl;
  if (rest.rfind("pkg:", 0) != 0) throw_error(ErrorKind::Decode, "purl must start with pkg:");
  rest.remove_prefix(4);
  while (!rest.empty() && rest.front() == '/') rest.remove_prefix(1);

  // Strip qualifiers and subpath; this artifact never emits them.
  if (auto q = rest.find('?'); q != std::string_view::npos) rest = rest.substr(0, q);
  if (auto h = rest.find('#'); h != std::string_view::npos) rest = rest.substr(0, h);

  size_t slash = rest.find('/');
  if (slash == std::string_view::npos) throw_error(ErrorKind::Decode, "purl has no type separator");
  PackageUrl p;
  p.type = std::string(rest.substr(0, slash));
  std::transform(p.type.begin(), p.type.end(), p.type.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  rest.remove_prefix(slash + 1);

  size_t at = rest.rfind('@');
  if (at == std::string_view::npos) throw_error(ErrorKind::Decode, "purl has no version");
  p.version = pct_decode(rest.substr(at + 1));
  if (p.version.empty()) throw_error(ErrorKind::Decode, "purl has empty version");
  rest = rest.substr(0, at);

  size_t last_slash = rest.rfind('/');
  if (last_slash == std::string_view::npos) {
    p.name = pct_decode(rest);
  } else {
    std::string ns_raw(rest.substr(0, last_slash));
    std::string decoded;
    std::string_view nsrest = ns_raw;
    while (!nsrest.empty()) {
      size_t seg = nsrest.find('/');
      if (!decoded.empty()) decoded.push_back('/');
      decoded += pct_decode(nsrest.substr(0, seg));
      if (seg == std::string_view::npos) break;
      nsrest.remove_prefix(seg + 1);
    }
    p.ns = decoded;
    p.name = pct_decode(rest.substr(last_slash + 1));
  }
  if (p.name.empty()) throw_error(ErrorKind::Decode, "purl has empty name");
  return p;
}

PackageUrl to_purl(EcosystemId e, const ComponentRef& c, const VersionRef& v) {
  PackageUrl p;
  p.version = v.raw;
  switch (e) {
    case EcosystemId::Maven:
      if (!c.group) throw_error(ErrorKind::Coordinate, "Maven purl needs a group");
      p.type = "maven";
      p.ns = *c.group;
      p.name = c.name;
      break;
    case EcosystemId::Npm: {
      p.type = "npm";
      // Scoped name "@scope/pkg" splits into namespace + name.
      if (!c.name.empty() && c.name.front() == '@') {
        auto slash = c.name.find('/');
        if (slash != std::string::npos) {
          p.ns = c.name.substr(0, slash);
          p.name = c.name.substr(slash + 1);
          break;
        }
      }
      p.name = c.name;
      break;
    }
    case EcosystemId::PyPI:
      p.type = "pypi";
      p.name = c.name;
      break;
    case EcosystemId::NuGet:
      p.type = "nuget";
      p.name = c.name;
      break;
  }
  return p;
}

std::tuple<EcosystemId, ComponentRef, VersionRef> from_purl(const PackageUrl& p) {
  EcosystemId eco;
  std::string coordinate;
  if (p.type == "maven") {
    eco = EcosystemId::Maven;
    if (!p.ns) throw_error(ErrorKind::Decode, "maven purl without namespace");
    coordinate = *p.ns + ":" + p.name;
  } else if (p.type == "npm") {
    eco = EcosystemId::Npm;
    coordinate = p.ns ? *p.ns + "/" + p.name : p.name;
  } else if (p.type == "pypi") {
    eco = EcosystemId::PyPI;
    coordinate = p.name;
  } else if (p.type == "nuget") {
    eco = EcosystemId::NuGet;
    coordinate = p.name;
  } else {
    throw_error(ErrorKind::Decode, "unsupported purl type '" + p.type + "'");
  }
  ComponentRef component = canonicalize_component(eco, coordinate);
  VersionRef version;
  version.raw = p.version;
  return {eco, component, version};
}

}  // namespace scabench

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "scabench/clients.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/parallel.hpp"
#include "scabench/versions.hpp"

namespace scabench {

namespace {

// HTTP-date per RFC 7231 ("Tue, 27 Oct 2020 10:00:00 GMT"), as served in
// Maven Central Last-Modified headers.
std::optional<std::string> parse_http_date(const std::string& raw) {
  static const char* months[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  auto comma = raw.find(", ");
  if (comma == std::string::npos) return std::nullopt;
  const std::string rest = raw.substr(comma + 2);  // "27 Oct 2020 10:00:00 GMT"
  if (rest.size() < 20) return std::nullopt;
  const std::string day = rest.substr(0, 2);
  const std::string mon = rest.substr(3, 3);
  const std::string year = rest.substr(7, 4);
  const std::string clock = rest.substr(12, 8);
  int month = 0;
  for (int i = 0; i < 12; ++i)
    if (mon == months[i]) month = i + 1;
  if (month == 0) return std::nullopt;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%s-%02d-%sT%sZ", year.c_str(), month, day.c_str(),
                clock.c_str());
  return std::string(buf);
}

// Registries disagree on timestamp shapes ("...Z", fractional seconds, no
// zone). Normalize to YYYY-MM-DDTHH:MM:SSZ so window filtering can compare
// lexicographically.
std::optional<std::string> normalize_timestamp(const std::string& raw) {
  if (raw.find(" GMT") != std::string::npos) return parse_http_date(raw);
  if (raw.size() < 10) return std::nullopt;
  auto digit = [&](size_t i) { return std::isdigit(static_cast<unsigned char>(raw[i])); };
  if (!(digit(0) && digit(1) && digit(2) && digit(3) && raw[4] == '-' && digit(5) && digit(6) &&
        raw[7] == '-' && digit(8) && digit(9)))
    return std::nullopt;
  std::string out = raw.substr(0, 10) + "T";
  if (raw.size() >= 19 && (raw[10] == 'T' || raw[10] == ' '))
    out += raw.substr(11, 8);
  else
    out += "00:00:00";
  out += "Z";
  return out;
}

struct ParsedRelease {
  RegistryRelease release;
  ParsedVersion parsed;
};

std::vector<RegistryRelease> sort_releases(std::vector<ParsedRelease> parsed) {
  std::stable_sort(parsed.begin(), parsed.end(), [](const ParsedRelease& a,
                                                    const ParsedRelease& b) {
    auto c = compare(a.parsed, b.parsed);
    if (c != 0) return c == std::strong_ordering::less;
    return a.release.version.raw < b.release.version.raw;
  });
  std::vector<RegistryRelease> out;
  out.reserve(parsed.size());
  for (auto& p : parsed) out.push_back(std::move(p.release));
  return out;
}

// Raw-string XML scan for <tag>value</tag> occurrences; Maven Central
// metadata is flat enough that a real XML parser buys nothing here.
std::vector<std::string> xml_values(const std::string& xml, const std::string& tag) {
  std::vector<std::string> values;
  const std::string open = "<" + tag + ">";
  const std::string close = "</" + tag + ">";
  size_t pos = 0;
  while ((pos = xml.find(open, pos)) != std::string::npos) {
    pos += open.size();
    size_t end = xml.find(close, pos);
    if (end == std::string::npos) break;
    values.push_back(xml.substr(pos, end - pos));
    pos = end + close.size();
  }
  return values;
}

}  // namespace

RegistryClient::RegistryClient(Transport& transport, RegistryEndpoints endpoints)
    : transport_(transport), endpoints_(std::move(endpoints)) {}

std::vector<RegistryRelease> RegistryClient::list_versions(const ComponentRef& component) {
  switch (component.ecosystem) {
    case EcosystemId::Npm: return list_npm(component);
    case EcosystemId::PyPI: return list_pypi(component);
    case EcosystemId::Maven: return list_maven(component);
    case EcosystemId::NuGet: return list_nuget(component);
  }
  throw_error(ErrorKind::Usage, "invalid ecosystem value");
}

std::vector<RegistryRelease> RegistryClient::list_npm(const ComponentRef& component) {
  HttpRequest request;
  request.url = endpoints_.npm + "/" + component.name;
  HttpResponse response = transport_.send(request);
  if (response.status == 404)
    throw_error(ErrorKind::NotFound, "npm package not found: " + component.name);
  if (response.status != 200)
    throw_error(ErrorKind::Transport,
                "npm registry returned status " + std::to_string(response.status));
  auto doc = parse_json(response.body, "npm registry document");
  if (!doc.contains("versions")) throw_error(ErrorKind::Decode, "npm document without versions");

  const auto times = doc.value("time", nlohmann::json::object());
  std::vector<ParsedRelease> parsed;
  for (const auto& [ver, meta] : doc.at("versions").items()) {
    (void)meta;
    ParsedRelease p;
    p.release.component = component;
    p.release.version.raw = ver;
    if (times.contains(ver))
      p.release.version.released_at = normalize_timestamp(times.at(ver).get<std::string>());
    try {
      p.parsed = parse_version(EcosystemId::Npm, ver);
    } catch (const Error&) {
      continue;  // unorderable junk version
    }
    p.release.version.prerelease = is_prerelease(p.parsed);
    parsed.push_back(std::move(p));
  }
  return sort_releases(std::move(parsed));
}

std::vector<RegistryRelease> RegistryClient::list_pypi(const ComponentRef& component) {
  HttpRequest request;
  request.url = endpoints_.pypi + "/pypi/" + component.name + "/json";
  HttpResponse response = transport_.send(request);
  if (response.status == 404)
    throw_error(ErrorKind::NotFound, "PyPI package not found: " + component.name);
  if (response.status != 200)
    throw_error(ErrorKind::Transport,
                "PyPI registry returned status " + std::to_string(response.status));
  auto doc = parse_json(response.body, "PyPI metadata document");
  if (!doc.contains("releases")) throw_error(ErrorKind::Decode, "PyPI document without releases");

  std::vector<ParsedRelease> parsed;
  for (const auto& [ver, files] : doc.at("releases").items()) {
    ParsedRelease p;
    p.release.component = component;
    p.release.version.raw = ver;
    bool all_yanked = !files.empty();
    std::optional<std::string> earliest;
    for (const auto& file : files) {
      if (!file.value("yanked", false)) all_yanked = false;
      auto ts = normalize_timestamp(file.value("upload_time_iso_8601", std::string()));
      if (ts && (!earliest || *ts < *earliest)) earliest = ts;
    }
    p.release.yanked = all_yanked;
    p.release.version.released_at = earliest;
    try {
      p.parsed = parse_version(EcosystemId::PyPI, ver);
    } catch (const Error&) {
      continue;
    }
    p.release.version.prerelease = is_prerelease(p.parsed);
    parsed.push_back(std::move(p));
  }
  return sort_releases(std::move(parsed));
}

std::vector<RegistryRelease> RegistryClient::list_maven(const ComponentRef& component) {
  if (!component.group) throw_error(ErrorKind::Coordinate, "Maven component without group");
  std::string group_path = *component.group;
  std::replace(group_path.begin(), group_path.end(), '.', '/');
  const std::string artifact_base =
      endpoints_.maven + "/" + group_path + "/" + component.name;

  HttpRequest request;
  request.url = artifact_base + "/maven-metadata.xml";
  HttpResponse response = transport_.send(request);
  if (response.status == 404)
    throw_error(ErrorKind::NotFound, "Maven artifact not found: " + component.coordinate());
  if (response.status != 200)
    throw_error(ErrorKind::Transport,
                "Maven Central returned status " + std::to_string(response.status));

  std::vector<ParsedRelease> parsed;
  for (const auto& ver : xml_values(response.body, "version")) {
    ParsedRelease p;
    p.release.component = component;
    p.release.version.raw = ver;
    try {
      p.parsed = parse_version(EcosystemId::Maven, ver);
    } catch (const Error&) {
      continue;
    }
    p.release.version.prerelease = is_prerelease(p.parsed);
    parsed.push_back(std::move(p));
  }

  // Per-version timestamps from the artifact poms, where the repository
  // exposes them. Missing dates stay unknown and fall out of any window.
  std::vector<std::string> versions;
  versions.reserve(parsed.size());
  for (const auto& p : parsed) versions.push_back(p.release.version.raw);
  auto timestamps = parallel_map(
      versions, transport_.max_concurrency(),
      [&](const std::string& ver) -> std::optional<std::string> {
        HttpRequest head;
        head.method = "HEAD";
        head.url = artifact_base + "/" + ver + "/" + component.name + "-" + ver + ".pom";
        try {
          HttpResponse pom = transport_.send(head);
          if (pom.status != 200) return std::nullopt;
          auto it = pom.headers.find("Last-Modified");
          if (it == pom.headers.end()) it = pom.headers.find("last-modified");
          if (it == pom.headers.end()) return std::nullopt;
          return normalize_timestamp(it->second);
        } catch (const Error&) {
          return std::nullopt;  // listing survives a missing pom
        }
      });
  for (size_t i = 0; i < parsed.size(); ++i)
    parsed[i].release.version.released_at = timestamps[i];
  return sort_releases(std::move(parsed));
}

std::vector<RegistryRelease> RegistryClient::list_nuget(const ComponentRef& component) {
  std::string lower = component.canonical_key();
  HttpRequest request;
  request.url = endpoints_.nuget + "/" + lower + "/index.json";
  HttpResponse response = transport_.send(request);
  if (response.status == 404)
    throw_error(ErrorKind::NotFound, "NuGet package not found: " + component.name);
  if (response.status != 200)
    throw_error(ErrorKind::Transport,
                "NuGet registry returned status " + std::to_string(response.status));
  auto doc = parse_json(response.body, "NuGet registration index");

  std::vector<ParsedRelease> parsed;
  auto consume_entry = [&](const nlohmann::json& entry) {
    if (!entry.contains("version")) return;
    ParsedRelease p;
    p.release.component = component;
    p.release.version.raw = entry.at("version").get<std::string>();
    const bool listed = entry.value("listed", true);
    auto published = normalize_timestamp(entry.value("published", std::string()));
    // NuGet marks unlisted packages with a 1900 placeholder date.
    const bool hidden = published && published->rfind("1900-", 0) == 0;
    p.release.yanked = !listed || hidden;
    if (published && !hidden) p.release.version.released_at = published;
    try {
      p.parsed = parse_version(EcosystemId::NuGet, p.release.version.raw);
    } catch (const Error&) {
      return;
    }
    p.release.version.prerelease = is_prerelease(p.parsed);
    parsed.push_back(std::move(p));
  };

  for (const auto& page : doc.value("items", nlohmann::json::array())) {
    nlohmann::json page_doc = page;
    if (!page.contains("items") && page.contains("@id")) {
      HttpRequest page_request;
      page_request.url = page.at("@id").get<std::string>();
      HttpResponse page_response = transport_.send(page_request);
      if (page_response.status != 200)
        throw_error(ErrorKind::Transport, "NuGet registration page returned status " +
                                              std::to_string(page_response.status));
      page_doc = parse_json(page_response.body, "NuGet registration page");
    }
    for (const auto& item : page_doc.value("items", nlohmann::json::array())) {
      if (item.contains("catalogEntry"))
        consume_entry(item.at("catalogEntry"));
      else
        consume_entry(item);
    }
  }
  return sort_releases(std::move(parsed));
}

}  // namespace scabench

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "scabench/transport.hpp"

#include <algorithm>
#include <chrono>
#include <thread>
#include <vector>

#include <httplib.h>

#include "scabench/errors.hpp"
#include "scabench/hashing.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

TransportMode transport_mode_from_string(const std::string& s) {
  if (s == "live") return TransportMode::Live;
  if (s == "record") return TransportMode::Record;
  if (s == "replay") return TransportMode::Replay;
  throw_error(ErrorKind::Usage, "unknown transport mode '" + s + "'");
}

std::string to_string(TransportMode m) {
  switch (m) {
    case TransportMode::Live: return "live";
    case TransportMode::Record: return "record";
    case TransportMode::Replay: return "replay";
  }
  return "replay";
}

namespace {

std::string canonical_url(const std::string& url) {
  auto q = url.find('?');
  if (q == std::string::npos) return url;
  std::string base = url.substr(0, q);
  std::vector<std::string> params;
  std::string rest = url.substr(q + 1);
  size_t start = 0;
  while (start <= rest.size()) {
    size_t amp = rest.find('&', start);
    params.push_back(rest.substr(start, amp == std::string::npos ? amp : amp - start));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  std::sort(params.begin(), params.end());
  std::string out = base + "?";
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out.push_back('&');
    out += params[i];
  }
  return out;
}

struct UrlParts {
  std::string scheme_host;  // e.g. https://api.osv.dev
  std::string path_query;   // e.g. /v1/querybatch
};

UrlParts split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw_error(ErrorKind::Usage, "URL without scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  UrlParts parts;
  if (path_start == std::string::npos) {
    parts.scheme_host = url;
    parts.path_query = "/";
  } else {
    parts.scheme_host = url.substr(0, path_start);
    parts.path_query = url.substr(path_start);
  }
  return parts;
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

std::string fixture_key(const HttpRequest& request) {
  std::string canonical = request.method;
  canonical += '\n';
  canonical += canonical_url(request.url);
  canonical += '\n';
  canonical += request.body;
  return sha256_hex(canonical);
}

HttpTransport::HttpTransport(TransportOptions options) : options_(std::move(options)) {
  if (options_.mode != TransportMode::Live && options_.fixture_dir.empty())
    throw_error(ErrorKind::Usage, "record/replay transport needs a fixture directory");
}

HttpTransport::~HttpTransport() = default;

void HttpTransport::store_fixture(const std::filesystem::path& dir, const HttpRequest& request,
                                  const HttpResponse& response) {
  nlohmann::json j{
      {"request",
       {{"body", request.body}, {"method", request.method}, {"url", request.url}}},
      {"response",
       {{"body", response.body}, {"headers", response.headers}, {"status", response.status}}},
  };
  std::filesystem::create_directories(dir);
  write_json_file(dir / (fixture_key(request) + ".json"), j);
}

HttpResponse HttpTransport::load_fixture(const std::filesystem::path& dir,
                                         const HttpRequest& request) {
  const auto path = dir / (fixture_key(request) + ".json");
  if (!std::filesystem::exists(path))
    throw_error(ErrorKind::Fixture, "replay cache miss for " + request.method + " " +
                                        request.url + " (key " + fixture_key(request) + ")");
  auto j = read_json_file(path);
  HttpResponse response;
  response.status = j.at("response").value("status", 0);
  response.body = j.at("response").value("body", std::string());
  if (j.at("response").contains("headers"))
    response.headers =
        j.at("response").at("headers").get<std::map<std::string, std::string>>();
  return response;
}

HttpResponse HttpTransport::send_live(const HttpRequest& request) {
  const UrlParts parts = split_url(request.url);
  httplib::Client client(parts.scheme_host);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  client.set_follow_location(true);

  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);

  double backoff = options_.backoff_initial_seconds;
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    httplib::Result result;
    if (request.method == "GET") {
      result = client.Get(parts.path_query, headers);
    } else if (request.method == "HEAD") {
      result = client.Head(parts.path_query, headers);
    } else if (request.method == "POST") {
      result = client.Post(parts.path_query, headers, request.body, "application/json");
    } else if (request.method == "PUT") {
      result = client.Put(parts.path_query, headers, request.body, "application/json");
    } else {
      throw_error(ErrorKind::Usage, "unsupported HTTP method " + request.method);
    }
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (retryable_status(result->status)) {
      last_error = "status " + std::to_string(result->status);
      continue;
    }
    HttpResponse response;
    response.status = result->status;
    response.body = result->body;
    for (const auto& [k, v] : result->headers) response.headers[k] = v;
    return response;
  }
  throw_error(ErrorKind::Transport, "request to " + request.url + " failed after " +
                                        std::to_string(options_.max_retries + 1) +
                                        " attempts: " + last_error);
}

HttpResponse HttpTransport::send(const HttpRequest& request) {
  switch (options_.mode) {
    case TransportMode::Replay:
      return load_fixture(options_.fixture_dir, request);
    case TransportMode::Record: {
      HttpResponse response = send_live(request);
      store_fixture(options_.fixture_dir, request, response);
      return response;
    }
    case TransportMode::Live:
      return send_live(request);
  }
  throw_error(ErrorKind::Usage, "invalid transport mode");
}

}  // namespace scabench

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>

namespace scabench {

struct HttpRequest {
  std::string method = "GET";
  std::string url;
  std::map<std::string, std::string> headers;
  std::string body;
};

struct HttpResponse {
  int status = 0;
  std::map<std::string, std::string> headers;
  std::string body;
};

enum class TransportMode { Live, Record, Replay };

TransportMode transport_mode_from_string(const std::string& s);
std::string to_string(TransportMode m);

// Fixture key: hash of the canonicalized request (method, URL with sorted
// query parameters, body). Headers stay out so auth and UA noise cannot
// perturb replay.
std::string fixture_key(const HttpRequest& request);

class Transport {
public:
  virtual ~Transport() = default;
  virtual HttpResponse send(const HttpRequest& request) = 0;
  // Bounded parallelism hint for batched callers; 1 = strictly sequential.
  virtual int max_concurrency() const { return 1; }
};

struct TransportOptions {
  TransportMode mode = TransportMode::Replay;
  std::filesystem::path fixture_dir;
  int max_retries = 3;
  double backoff_initial_seconds = 0.5;
  long timeout_seconds = 30;
  int concurrency = 4;
};

// Production transport. Live and record modes reach the network through
// cpp-httplib with bounded retries and exponential backoff on 429/5xx;
// replay mode performs zero network I/O and treats a cache miss as an
// error, never a live fallback.
class HttpTransport : public Transport {
public:
  explicit HttpTransport(TransportOptions options);
  ~HttpTransport() override;

  HttpResponse send(const HttpRequest& request) override;
  int max_concurrency() const override { return options_.concurrency; }

  const TransportOptions& options() const { return options_; }

  // Writes one request/response pair into a fixture store; used by record
  // mode and by fixture authoring tools.
  static void store_fixture(const std::filesystem::path& dir, const HttpRequest& request,
                            const HttpResponse& response);
  static HttpResponse load_fixture(const std::filesystem::path& dir, const HttpRequest& request);

private:
  HttpResponse send_live(const HttpRequest& request);

  TransportOptions options_;
};

}  // namespace scabench

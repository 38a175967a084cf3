#include "scabench/adapters.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>

#include "scabench/errors.hpp"
#include "scabench/hashing.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

void AdapterConfig::validate() const {
  if (timeout_seconds <= 0) throw_error(ErrorKind::Usage, "adapter timeout must be > 0");
  if (retry < 1) throw_error(ErrorKind::Usage, "adapter retry must be >= 1");
  if (batch_size < 1) throw_error(ErrorKind::Usage, "adapter batch size must be >= 1");
}

std::string hash_findings(const std::vector<NormalizedFinding>& findings) {
  std::vector<const NormalizedFinding*> sorted;
  sorted.reserve(findings.size());
  for (const auto& f : findings) sorted.push_back(&f);
  std::sort(sorted.begin(), sorted.end(),
            [](const NormalizedFinding* a, const NormalizedFinding* b) { return *a < *b; });
  std::string bytes;
  for (const auto* f : sorted) {
    nlohmann::json j = *f;
    bytes += canonical_dump(j);
    bytes += '\n';
  }
  return sha256_hex(bytes);
}

namespace adapter_detail {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

FindingCollector::FindingCollector(ToolId tool, const Snapshot& snapshot)
    : tool_(tool), snapshot_(snapshot) {
  result_.tool = tool;
  result_.started_at = utc_now();
  for (const auto& e : snapshot_.entries)
    input_tuples_.insert(
        {to_string(e.ecosystem), e.component.canonical_key(), e.version.raw});
}

void FindingCollector::add(NormalizedFinding finding) {
  ++result_.raw_count;
  finding.tool = tool_;
  if (!seen_.insert(finding.key()).second) {
    ++result_.skipped_count;
    nlohmann::json key{{"component", finding.component.coordinate()},
                       {"version", finding.version.raw},
                       {"vuln", finding.vuln.value}};
    result_.skipped.push_back(nlohmann::json{{"detail", key}, {"reason", "duplicate"}});
    return;
  }
  // Findings outside the snapshot's tuple set stay in, flagged; the
  // evaluation engine classifies them as FP_GT.
  finding.out_of_input = !input_tuples_.count({to_string(finding.ecosystem),
                                               finding.component.canonical_key(),
                                               finding.version.raw});
  ++result_.normalized_count;
  result_.findings.push_back(std::move(finding));
}

void FindingCollector::skip(const std::string& reason, const nlohmann::json& detail) {
  ++result_.raw_count;
  ++result_.skipped_count;
  result_.skipped.push_back(nlohmann::json{{"detail", detail}, {"reason", reason}});
}

ToolRunResult FindingCollector::finish() {
  std::sort(result_.findings.begin(), result_.findings.end());
  result_.result_hash = hash_findings(result_.findings);
  result_.finished_at = utc_now();
  return std::move(result_);
}

std::string resolve_env(const AdapterConfig& cfg, const std::string& key,
                        const std::string& fallback_var) {
  std::string var = fallback_var;
  auto it = cfg.credential_env.find(key);
  if (it != cfg.credential_env.end()) var = it->second;
  if (var.empty()) return {};
  const char* value = std::getenv(var.c_str());
  return value ? value : "";
}

}  // namespace adapter_detail

std::unique_ptr<ToolAdapter> make_replay_adapter();
std::unique_ptr<ToolAdapter> make_dtrack_adapter();
std::unique_ptr<ToolAdapter> make_snyk_adapter();
std::unique_ptr<ToolAdapter> make_ossindex_adapter();
std::unique_ptr<ToolAdapter> make_github_adapter();
std::unique_ptr<ToolAdapter> make_trivy_adapter();

std::unique_ptr<ToolAdapter> make_adapter(ToolId tool) {
  switch (tool) {
    case ToolId::Replay: return make_replay_adapter();
    case ToolId::Dtrack: return make_dtrack_adapter();
    case ToolId::Snyk: return make_snyk_adapter();
    case ToolId::OssIndex: return make_ossindex_adapter();
    case ToolId::Github: return make_github_adapter();
    case ToolId::Trivy: return make_trivy_adapter();
  }
  throw_error(ErrorKind::Usage, "invalid tool value");
}

}  // namespace scabench

#include <map>
#include <set>

#include "scabench/clients.hpp"
#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"
#include "scabench/parallel.hpp"

namespace scabench {

namespace {

// OSV spells ecosystems exactly like this artifact does.
std::string osv_ecosystem(EcosystemId e) { return to_string(e); }

nlohmann::json query_object(const ComponentRef& c, const VersionRef& v) {
  return nlohmann::json{
      {"package", {{"ecosystem", osv_ecosystem(c.ecosystem)}, {"name", c.coordinate()}}},
      {"version", v.raw},
  };
}

}  // namespace

OsvClient::OsvClient(Transport& transport, OsvEndpoints endpoints, int batch_size)
    : transport_(transport), endpoints_(std::move(endpoints)), batch_size_(batch_size) {
  if (batch_size_ < 1) throw_error(ErrorKind::Usage, "OSV batch size must be >= 1");
}

OsvVulnRecord OsvClient::fetch_vuln(const VulnId& id) {
  HttpRequest request;
  request.method = "GET";
  request.url = endpoints_.base_url + "/v1/vulns/" + id.value;
  HttpResponse response = transport_.send(request);
  if (response.status == 404) throw_error(ErrorKind::NotFound, "OSV id not found: " + id.value);
  if (response.status != 200)
    throw_error(ErrorKind::Transport,
                "OSV vuln fetch failed with status " + std::to_string(response.status));
  auto j = parse_json(response.body, "OSV vuln " + id.value);
  OsvVulnRecord record;
  record.id = VulnId(j.value("id", id.value));
  if (record.id.value.empty()) throw_error(ErrorKind::Decode, "OSV record with empty id");
  for (const auto& alias : j.value("aliases", nlohmann::json::array()))
    record.aliases.insert(VulnId(alias.get<std::string>()));
  record.raw = std::move(j);
  return record;
}

std::vector<std::vector<OsvVulnRecord>> OsvClient::query_batch(
    const std::vector<std::pair<ComponentRef, VersionRef>>& items) {
  if (items.empty()) throw_error(ErrorKind::Usage, "OSV query batch needs at least one item");

  // Collect per-item vuln id lists first; ids carry no aliases in the batch
  // response, so full records are fetched (and cached) afterwards.
  std::vector<std::vector<VulnId>> ids_per_item(items.size());

  for (size_t offset = 0; offset < items.size(); offset += static_cast<size_t>(batch_size_)) {
    const size_t count = std::min(static_cast<size_t>(batch_size_), items.size() - offset);

    // Pending queries for this sub-batch: (input index, page token). Queries
    // with further pages are re-posted with their token until exhaustion.
    std::vector<std::pair<size_t, std::string>> pending;
    for (size_t i = 0; i < count; ++i) pending.emplace_back(offset + i, std::string());

    while (!pending.empty()) {
      auto queries = nlohmann::json::array();
      for (const auto& [index, token] : pending) {
        auto q = query_object(items[index].first, items[index].second);
        if (!token.empty()) q["page_token"] = token;
        queries.push_back(std::move(q));
      }

      HttpRequest request;
      request.method = "POST";
      request.url = endpoints_.base_url + "/v1/querybatch";
      request.body = canonical_dump(nlohmann::json{{"queries", queries}});
      HttpResponse response = transport_.send(request);
      if (response.status != 200)
        throw_error(ErrorKind::Transport,
                    "OSV querybatch failed with status " + std::to_string(response.status));
      auto j = parse_json(response.body, "OSV querybatch response");
      const auto& results = j.at("results");
      if (!results.is_array() || results.size() != pending.size())
        throw_error(ErrorKind::Decode, "OSV querybatch result misaligned with request");

      std::vector<std::pair<size_t, std::string>> next;
      for (size_t i = 0; i < pending.size(); ++i) {
        const auto& result = results[i];
        for (const auto& vuln : result.value("vulns", nlohmann::json::array()))
          ids_per_item[pending[i].first].emplace_back(vuln.value("id", std::string()));
        if (result.contains("next_page_token") &&
            !result.at("next_page_token").get<std::string>().empty())
          next.emplace_back(pending[i].first, result.at("next_page_token").get<std::string>());
      }
      pending = std::move(next);
    }
  }

  // Resolve full records once per distinct id, with bounded concurrent
  // fetches merged back in deterministic id order.
  std::set<std::string> distinct;
  for (const auto& ids : ids_per_item)
    for (const auto& id : ids) {
      if (id.value.empty()) throw_error(ErrorKind::Decode, "OSV batch returned an empty id");
      distinct.insert(id.value);
    }
  std::vector<std::string> id_list(distinct.begin(), distinct.end());
  auto records = parallel_map(id_list, transport_.max_concurrency(),
                              [this](const std::string& id) { return fetch_vuln(VulnId(id)); });
  std::map<std::string, OsvVulnRecord> cache;
  for (size_t i = 0; i < id_list.size(); ++i) cache[id_list[i]] = std::move(records[i]);

  std::vector<std::vector<OsvVulnRecord>> out(items.size());
  for (size_t i = 0; i < items.size(); ++i)
    for (const auto& id : ids_per_item[i]) out[i].push_back(cache.at(id.value));
  return out;
}

}  // namespace scabench

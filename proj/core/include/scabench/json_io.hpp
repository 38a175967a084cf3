#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace scabench {

// Canonical encoding: UTF-8, lexicographically sorted keys, no insignificant
// whitespace. nlohmann::json objects are std::map-backed, so dumping is
// already key-sorted; this is the single place that fixes the byte format.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json parse_json(const std::string& text, const std::string& what);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// JSON Lines: one canonical object per line.
std::vector<nlohmann::json> read_jsonl_file(const std::filesystem::path& path);
void write_jsonl_file(const std::filesystem::path& path,
                      const std::vector<nlohmann::json>& rows);

}  // namespace scabench

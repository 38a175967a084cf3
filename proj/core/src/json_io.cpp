#include "scabench/json_io.hpp"

#include <fstream>
#include <sstream>

#include "scabench/errors.hpp"

namespace scabench {

std::string canonical_dump(const nlohmann::json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw_error(ErrorKind::Decode, "invalid JSON in " + what);
  return j;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_error(ErrorKind::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw_error(ErrorKind::Io, "short write to " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_file(path), path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_file(path, j.dump(2) + "\n");
}

std::vector<nlohmann::json> read_jsonl_file(const std::filesystem::path& path) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(read_file(path));
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    rows.push_back(parse_json(line, path.string() + ":" + std::to_string(lineno)));
  }
  return rows;
}

void write_jsonl_file(const std::filesystem::path& path,
                      const std::vector<nlohmann::json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += canonical_dump(row);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace scabench

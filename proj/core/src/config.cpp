#include "scabench/config.hpp"

#include <algorithm>
#include <cctype>

#include "scabench/errors.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

void to_json(nlohmann::json& j, const AdapterConfig& c) {
  j = nlohmann::json{
      {"batch_size", c.batch_size},
      {"retry", c.retry},
      {"timeout_seconds", c.timeout_seconds},
      {"tool", to_string(c.tool)},
  };
  if (!c.endpoint.empty()) j["endpoint"] = c.endpoint;
  if (!c.credential_env.empty()) j["credential_env"] = c.credential_env;
  if (!c.findings_fixture.empty()) j["findings_fixture"] = c.findings_fixture.string();
  if (!c.work_dir.empty()) j["work_dir"] = c.work_dir.string();
}

void from_json(const nlohmann::json& j, AdapterConfig& c) {
  c = AdapterConfig{};
  if (j.contains("tool")) c.tool = tool_from_string(j.at("tool").get<std::string>());
  c.endpoint = j.value("endpoint", std::string());
  if (j.contains("credential_env"))
    c.credential_env = j.at("credential_env").get<std::map<std::string, std::string>>();
  c.retry = j.value("retry", 3);
  c.timeout_seconds = j.value("timeout_seconds", 180L);
  c.batch_size = j.value("batch_size", 128);
  if (j.contains("findings_fixture"))
    c.findings_fixture = j.at("findings_fixture").get<std::string>();
  if (j.contains("work_dir")) c.work_dir = j.at("work_dir").get<std::string>();
}

void to_json(nlohmann::json& j, const RunConfigFile& c) {
  auto adapters = nlohmann::json::object();
  for (const auto& [tool, acfg] : c.adapters) adapters[to_string(tool)] = acfg;
  auto tools = nlohmann::json::array();
  for (ToolId tool : c.tools) tools.push_back(to_string(tool));
  j = nlohmann::json{
      {"adapters", adapters},
      {"attempts_max", c.attempts_max},
      {"build", c.build},
      {"output", c.output_dir.string()},
      {"repeats", c.repeats},
      {"tools", tools},
      {"transport", to_string(c.transport_mode)},
  };
  if (!c.fixture_dir.empty()) j["fixtures"] = c.fixture_dir.string();
  if (!c.command_fixture_dir.empty()) j["command_fixtures"] = c.command_fixture_dir.string();
}

void from_json(const nlohmann::json& j, RunConfigFile& c) {
  c = RunConfigFile{};
  if (j.contains("build")) c.build = j.at("build").get<BuildConfig>();
  if (j.contains("adapters"))
    for (const auto& [tool, acfg] : j.at("adapters").items()) {
      AdapterConfig parsed = acfg.get<AdapterConfig>();
      parsed.tool = tool_from_string(tool);
      c.adapters[parsed.tool] = std::move(parsed);
    }
  if (j.contains("tools"))
    for (const auto& tool : j.at("tools")) c.tools.push_back(tool_from_string(tool));
  c.transport_mode = transport_mode_from_string(j.value("transport", std::string("replay")));
  if (j.contains("fixtures")) c.fixture_dir = j.at("fixtures").get<std::string>();
  if (j.contains("command_fixtures"))
    c.command_fixture_dir = j.at("command_fixtures").get<std::string>();
  c.output_dir = j.value("output", std::string("runs"));
  c.attempts_max = j.value("attempts_max", 3);
  c.repeats = j.value("repeats", 2);
}

namespace {

std::string trim_view(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

nlohmann::json parse_toml_scalar(const std::string& raw) {
  const std::string v = trim_view(raw);
  if (v.empty()) throw_error(ErrorKind::Decode, "empty TOML value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw_error(ErrorKind::Decode, "unterminated TOML string: " + v);
    std::string out;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) {
        ++i;
        switch (v[i]) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: out.push_back(v[i]);
        }
      } else {
        out.push_back(v[i]);
      }
    }
    return out;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.find_first_not_of("+-0123456789") == std::string::npos)
    return std::stoll(v);
  if (v.find_first_not_of("+-0123456789.eE") == std::string::npos)
    return std::stod(v);
  throw_error(ErrorKind::Decode, "unsupported TOML value: " + v);
}

nlohmann::json parse_toml_value(const std::string& raw) {
  const std::string v = trim_view(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw_error(ErrorKind::Decode, "unterminated TOML array: " + v);
    auto array = nlohmann::json::array();
    std::string inner = v.substr(1, v.size() - 2);
    std::string item;
    bool in_string = false;
    for (char ch : inner) {
      if (ch == '"') in_string = !in_string;
      if (ch == ',' && !in_string) {
        if (!trim_view(item).empty()) array.push_back(parse_toml_scalar(item));
        item.clear();
      } else {
        item.push_back(ch);
      }
    }
    if (!trim_view(item).empty()) array.push_back(parse_toml_scalar(item));
    return array;
  }
  return parse_toml_scalar(v);
}

std::vector<std::string> split_dotted(const std::string& key) {
  std::vector<std::string> parts;
  std::string part;
  bool in_string = false;
  for (char ch : key) {
    if (ch == '"') {
      in_string = !in_string;
      continue;
    }
    if (ch == '.' && !in_string) {
      parts.push_back(trim_view(part));
      part.clear();
    } else {
      part.push_back(ch);
    }
  }
  parts.push_back(trim_view(part));
  return parts;
}

}  // namespace

nlohmann::json toml_to_json(const std::string& text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* current = &root;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim_view(strip_comment(line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw_error(ErrorKind::Decode, "bad TOML table header: " + line);
      const std::string header = trim_view(line.substr(1, line.size() - 2));
      current = &root;
      for (const auto& part : split_dotted(header)) {
        if (part.empty()) throw_error(ErrorKind::Decode, "empty TOML table name in " + line);
        current = &(*current)[part];
        if (current->is_null()) *current = nlohmann::json::object();
      }
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) throw_error(ErrorKind::Decode, "TOML line without '=': " + line);
    std::string key = trim_view(line.substr(0, eq));
    if (key.empty()) throw_error(ErrorKind::Decode, "TOML line without key: " + line);
    nlohmann::json* slot = current;
    auto parts = split_dotted(key);
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
      slot = &(*slot)[parts[i]];
      if (slot->is_null()) *slot = nlohmann::json::object();
    }
    (*slot)[parts.back()] = parse_toml_value(line.substr(eq + 1));
  }
  return root;
}

RunConfigFile load_run_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  // Auto-detect: JSON documents open with '{' once whitespace is skipped.
  size_t first = text.find_first_not_of(" \t\r\n");
  nlohmann::json j;
  if (first != std::string::npos && text[first] == '{')
    j = parse_json(text, path.string());
  else
    j = toml_to_json(text);
  RunConfigFile cfg = j.get<RunConfigFile>();
  cfg.build.validate();
  return cfg;
}

}  // namespace scabench

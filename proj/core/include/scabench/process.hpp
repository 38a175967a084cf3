#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scabench {

struct CommandSpec {
  std::vector<std::string> argv;
  std::map<std::string, std::string> env;  // added on top of the inherited env
  long timeout_seconds = 180;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
  bool timed_out = false;
};

// Seam for CLI-driven tools (snyk, trivy): live execution or deterministic
// replay from recorded outputs, mirroring the HTTP transport.
class CommandRunner {
public:
  virtual ~CommandRunner() = default;
  virtual CommandResult run(const CommandSpec& spec) = 0;
};

// fork/exec with captured stdout/stderr and a hard deadline.
class ProcessRunner : public CommandRunner {
public:
  CommandResult run(const CommandSpec& spec) override;
};

std::string command_fixture_key(const CommandSpec& spec);

// Replays recorded command outputs; a miss is an error.
class ReplayCommandRunner : public CommandRunner {
public:
  explicit ReplayCommandRunner(std::filesystem::path fixture_dir);
  CommandResult run(const CommandSpec& spec) override;

  static void store_fixture(const std::filesystem::path& dir, const CommandSpec& spec,
                            const CommandResult& result);

private:
  std::filesystem::path fixture_dir_;
};

// Runs live and records the outcome for later replay.
class RecordingCommandRunner : public CommandRunner {
public:
  explicit RecordingCommandRunner(std::filesystem::path fixture_dir);
  CommandResult run(const CommandSpec& spec) override;

private:
  ProcessRunner live_;
  std::filesystem::path fixture_dir_;
};

}  // namespace scabench

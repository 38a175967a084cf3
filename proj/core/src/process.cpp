#include "scabench/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>

#include "scabench/errors.hpp"
#include "scabench/hashing.hpp"
#include "scabench/json_io.hpp"

namespace scabench {

namespace {

void drain(int fd, std::string& sink) {
  char buf[4096];
  for (;;) {
    ssize_t n = ::read(fd, buf, sizeof buf);
    if (n <= 0) break;
    sink.append(buf, static_cast<size_t>(n));
  }
}

}  // namespace

CommandResult ProcessRunner::run(const CommandSpec& spec) {
  if (spec.argv.empty()) throw_error(ErrorKind::Usage, "empty command line");

  int out_pipe[2], err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
    throw_error(ErrorKind::Run, "pipe() failed: " + std::string(std::strerror(errno)));

  pid_t pid = fork();
  if (pid < 0) throw_error(ErrorKind::Run, "fork() failed: " + std::string(std::strerror(errno)));

  if (pid == 0) {
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    for (const auto& [k, v] : spec.env) setenv(k.c_str(), v.c_str(), 1);
    std::vector<char*> argv;
    argv.reserve(spec.argv.size() + 1);
    for (const auto& a : spec.argv) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    std::fprintf(stderr, "exec %s failed: %s\n", argv[0], std::strerror(errno));
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

  CommandResult result;
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::seconds(spec.timeout_seconds);
  bool open_out = true, open_err = true;
  while (open_out || open_err) {
    if (std::chrono::steady_clock::now() > deadline) {
      kill(pid, SIGKILL);
      result.timed_out = true;
      break;
    }
    struct pollfd fds[2];
    nfds_t n = 0;
    if (open_out) fds[n++] = {out_pipe[0], POLLIN, 0};
    if (open_err) fds[n++] = {err_pipe[0], POLLIN, 0};
    int ready = poll(fds, n, 250);
    if (ready < 0 && errno != EINTR) break;
    for (nfds_t i = 0; i < n; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP))) continue;
      const bool is_out = fds[i].fd == out_pipe[0];
      char buf[8192];
      ssize_t got = ::read(fds[i].fd, buf, sizeof buf);
      if (got > 0) {
        (is_out ? result.out : result.err).append(buf, static_cast<size_t>(got));
      } else if (got == 0 || (got < 0 && errno != EAGAIN && errno != EINTR)) {
        (is_out ? open_out : open_err) = false;
      }
    }
  }
  drain(out_pipe[0], result.out);
  drain(err_pipe[0], result.err);
  close(out_pipe[0]);
  close(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (result.timed_out)
    result.exit_code = -1;
  else if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_code = 128 + WTERMSIG(status);
  return result;
}

std::string command_fixture_key(const CommandSpec& spec) {
  std::string canonical;
  for (const auto& a : spec.argv) {
    canonical += a;
    canonical.push_back('\0');
  }
  return sha256_hex(canonical);
}

ReplayCommandRunner::ReplayCommandRunner(std::filesystem::path fixture_dir)
    : fixture_dir_(std::move(fixture_dir)) {}

void ReplayCommandRunner::store_fixture(const std::filesystem::path& dir, const CommandSpec& spec,
                                        const CommandResult& result) {
  nlohmann::json j{
      {"argv", spec.argv},
      {"exit_code", result.exit_code},
      {"stderr", result.err},
      {"stdout", result.out},
  };
  std::filesystem::create_directories(dir);
  write_json_file(dir / ("cmd-" + command_fixture_key(spec) + ".json"), j);
}

CommandResult ReplayCommandRunner::run(const CommandSpec& spec) {
  const auto path = fixture_dir_ / ("cmd-" + command_fixture_key(spec) + ".json");
  if (!std::filesystem::exists(path)) {
    std::string joined;
    for (const auto& a : spec.argv) joined += a + " ";
    throw_error(ErrorKind::Fixture, "command replay miss for: " + joined);
  }
  auto j = read_json_file(path);
  CommandResult result;
  result.exit_code = j.value("exit_code", -1);
  result.out = j.value("stdout", std::string());
  result.err = j.value("stderr", std::string());
  return result;
}

RecordingCommandRunner::RecordingCommandRunner(std::filesystem::path fixture_dir)
    : fixture_dir_(std::move(fixture_dir)) {}

CommandResult RecordingCommandRunner::run(const CommandSpec& spec) {
  CommandResult result = live_.run(spec);
  ReplayCommandRunner::store_fixture(fixture_dir_, spec, result);
  return result;
}

}  // namespace scabench

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scabench {

// Stable machine-readable error categories, surfaced by the CLI as JSON.
enum class ErrorKind {
  Coordinate,  // malformed component coordinate
  Parse,       // version / range grammar failure
  Usage,       // caller violated an API precondition
  Transport,   // HTTP failure after retries
  Fixture,     // replay cache miss or corrupt fixture
  NotFound,    // unknown package or resource
  Decode,      // malformed remote payload or file
  Data,        // inconsistent data crossing module boundaries
  Run,         // tool execution failure
  Abort,       // controlled run exhausted its attempts
  Io,          // filesystem failure
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace scabench

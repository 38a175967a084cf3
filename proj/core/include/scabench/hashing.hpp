#pragma once

#include <string>
#include <string_view>

namespace scabench {

// Lowercase hex SHA-256 of the exact byte sequence.
std::string sha256_hex(std::string_view bytes);

// Deterministic name-based UUID (version 5) rendered as 8-4-4-4-12 hex.
std::string uuid5(std::string_view name);

}  // namespace scabench

#include "scabench/hashing.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>

#include "scabench/errors.hpp"

namespace scabench {

namespace {

std::string hex_encode(const unsigned char* data, size_t len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (size_t i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0x0f]);
  }
  return out;
}

std::array<unsigned char, EVP_MAX_MD_SIZE> digest(const EVP_MD* md, std::string_view bytes,
                                                  unsigned* out_len) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> buf{};
  if (EVP_Digest(bytes.data(), bytes.size(), buf.data(), out_len, md, nullptr) != 1)
    throw_error(ErrorKind::Io, "digest computation failed");
  return buf;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned len = 0;
  auto buf = digest(EVP_sha256(), bytes, &len);
  return hex_encode(buf.data(), len);
}

std::string uuid5(std::string_view name) {
  // RFC 4122 name-based UUID over the URL namespace.
  static const unsigned char ns[16] = {0x6b, 0xa7, 0xb8, 0x11, 0x9d, 0xad, 0x11, 0xd1,
                                       0x80, 0xb4, 0x00, 0xc0, 0x4f, 0xd4, 0x30, 0xc8};
  std::string input(reinterpret_cast<const char*>(ns), 16);
  input.append(name);
  unsigned len = 0;
  auto buf = digest(EVP_sha1(), input, &len);

  buf[6] = static_cast<unsigned char>((buf[6] & 0x0f) | 0x50);  // version 5
  buf[8] = static_cast<unsigned char>((buf[8] & 0x3f) | 0x80);  // RFC 4122 variant

  std::string hex = hex_encode(buf.data(), 16);
  return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) + "-" +
         hex.substr(16, 4) + "-" + hex.substr(20, 12);
}

}  // namespace scabench

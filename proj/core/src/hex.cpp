// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/hex.hpp"

#include "metagov/errors.hpp"

namespace metagov::hex {

namespace {
constexpr char kDigits[] = "0123456789abcdef";
}

int nibble(char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::string encode0x(std::span<const std::uint8_t> bytes) {
  return "0x" + encode(bytes);
}

std::vector<std::uint8_t> decode(std::string_view text) {
  if (text.size() % 2 != 0) {
    throw ParseError("hex string has odd length: " + std::string(text));
  }
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const int hi = nibble(text[i]);
    const int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParseError("invalid hex digit in: " + std::string(text));
    }
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::vector<std::uint8_t> decode0x(std::string_view text) {
  if (text.size() < 2 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    throw ParseError("missing 0x prefix: " + std::string(text));
  }
  return decode(text.substr(2));
}

}  // namespace metagov::hex

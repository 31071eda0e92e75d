// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_HEX_HPP
#define METAGOV_HEX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metagov::hex {

/// Lowercase hex, no prefix.
std::string encode(std::span<const std::uint8_t> bytes);

/// Lowercase hex with "0x" prefix.
std::string encode0x(std::span<const std::uint8_t> bytes);

/// Decodes hex of even length, case-insensitive. Throws ParseError.
std::vector<std::uint8_t> decode(std::string_view text);

/// Like decode() but requires and strips a "0x"/"0X" prefix.
std::vector<std::uint8_t> decode0x(std::string_view text);

/// Value of one hex digit, or -1.
int nibble(char c) noexcept;

}  // namespace metagov::hex

#endif  // METAGOV_HEX_HPP

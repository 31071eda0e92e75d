// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_KECCAK_HPP
#define METAGOV_KECCAK_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace metagov::crypto {

/// Keccak-256 as used on Ethereum (original Keccak submission padding,
/// not the later FIPS-202 SHA3-256 variant).
std::array<std::uint8_t, 32> keccak256(std::span<const std::uint8_t> data);

std::array<std::uint8_t, 32> keccak256(std::string_view text);

}  // namespace metagov::crypto

#endif  // METAGOV_KECCAK_HPP

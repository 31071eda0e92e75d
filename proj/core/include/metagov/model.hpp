// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_MODEL_HPP
#define METAGOV_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace metagov {

/// 256-bit unsigned integer for on-chain quantities (vote weights are in
/// raw token base units and routinely exceed 64 bits).
using U256 = boost::multiprecision::uint256_t;

std::string u256_to_string(const U256& v);
U256 u256_from_string(std::string_view text);  // decimal or 0x-hex

/// A 20-byte account address. Input parsing is case-insensitive; equality
/// is byte equality. Display forms: lowercase hex or EIP-55 checksum.
class Address {
 public:
  static constexpr std::size_t kSize = 20;

  Address() = default;  // zero address
  explicit Address(const std::array<std::uint8_t, kSize>& bytes)
      : bytes_(bytes) {}

  /// Parses "0x" + 40 hex digits, any case. Throws ParseError on
  /// malformed hex or wrong length.
  static Address parse(std::string_view text);

  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }

  /// "0x" + 40 lowercase hex digits.
  std::string hex() const;

  /// EIP-55 mixed-case checksum form (the display string).
  std::string checksum() const;

  bool is_zero() const;

  auto operator<=>(const Address&) const = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

Address parse_address(std::string_view text);

enum class AccountKind {
  ExternallyOwned,
  Contract,
};

/// A 32-byte log topic (topic 0 carries the event signature hash).
class TopicHash {
 public:
  static constexpr std::size_t kSize = 32;

  TopicHash() = default;
  explicit TopicHash(const std::array<std::uint8_t, kSize>& bytes)
      : bytes_(bytes) {}

  static TopicHash parse(std::string_view text);  // "0x" + 64 hex digits

  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }
  std::string hex() const;

  auto operator<=>(const TopicHash&) const = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

/// An event or function signature in canonical ABI text form:
/// name + "(" + comma-joined canonical types + ")", no whitespace.
struct CanonicalSignature {
  std::string name;
  std::vector<std::string> param_types;

  std::string text() const;

  /// Parses and validates a canonical signature string. The name must be
  /// non-empty and free of parentheses/commas; parameter types must be
  /// well-formed canonical type strings (tuples may nest). Throws
  /// ParseError.
  static CanonicalSignature parse(std::string_view text);

  auto operator<=>(const CanonicalSignature&) const = default;
};

/// keccak-256 of the canonical text form.
TopicHash signature_topic_hash(const CanonicalSignature& sig);

/// First 4 bytes of the digest; the key for function signatures.
std::array<std::uint8_t, 4> function_selector(const CanonicalSignature& sig);

enum class CallType {
  Call,
  DelegateCall,
  StaticCall,
  Create,
};

std::string_view call_type_name(CallType t);
CallType call_type_from_name(std::string_view name);  // throws ParseError

/// One internal call observed in trace data.
struct TraceRecord {
  Address from;
  Address to;
  CallType call_type = CallType::Call;
  std::uint64_t block_number = 0;
  std::uint32_t tx_index = 0;
  /// Position within the transaction's trace tree; unique per
  /// (block_number, tx_index).
  std::vector<std::uint32_t> trace_path;
};

/// One raw event log as emitted on chain.
struct EventLogRecord {
  Address emitter;
  std::vector<TopicHash> topics;  // 0..4; topics[0] is the signature hash
  std::vector<std::uint8_t> data;
  std::uint64_t block_number = 0;
  std::uint32_t tx_index = 0;
  std::uint32_t log_index = 0;

  std::optional<TopicHash> topic0() const {
    if (topics.empty()) return std::nullopt;
    return topics.front();
  }

  /// Total order used everywhere logs are returned.
  friend bool operator<(const EventLogRecord& a, const EventLogRecord& b) {
    return std::tie(a.block_number, a.tx_index, a.log_index) <
           std::tie(b.block_number, b.tx_index, b.log_index);
  }
};

enum class DaoSource {
  SeedList,
  Expansion,
  LabelInference,
};

std::string_view dao_source_name(DaoSource s);
DaoSource dao_source_from_name(std::string_view name);

/// A DAO as tracked through the pipeline. At least one of
/// voting_power_address / governor_address / snapshot_space is present.
struct DaoIdentity {
  std::string id;
  std::string display_name;
  std::optional<Address> voting_power_address;
  std::optional<Address> governor_address;
  std::optional<std::string> snapshot_space;
  DaoSource source = DaoSource::SeedList;
};

}  // namespace metagov

template <>
struct std::hash<metagov::Address> {
  std::size_t operator()(const metagov::Address& a) const noexcept {
    // First 8 bytes are as good a hash as any for real addresses.
    std::size_t h = 0;
    for (std::size_t i = 0; i < sizeof(std::size_t); ++i) {
      h = h << 8 | a.bytes()[i];
    }
    return h;
  }
};

#endif  // METAGOV_MODEL_HPP

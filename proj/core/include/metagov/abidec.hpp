// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_ABIDEC_HPP
#define METAGOV_ABIDEC_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "metagov/model.hpp"

namespace metagov {

/// Parsed form of a canonical ABI type string.
///
/// Containers are supported one level deep: arrays of elementary types,
/// arrays of flat tuples, and flat tuples of elementary types. Deeper
/// nesting (tuples containing containers, arrays of arrays) is rejected
/// with AbiError — governance events in the wild are flat.
struct AbiType {
  enum class Kind {
    Address,
    Uint,
    Int,
    Bool,
    FixedBytes,
    Bytes,
    String,
    Array,
    Tuple,
  };

  Kind kind = Kind::Uint;
  unsigned bits = 256;        // Uint / Int
  unsigned byte_count = 32;   // FixedBytes
  unsigned array_length = 0;  // Array: 0 means dynamic "[]"
  std::vector<AbiType> elems;  // Array: exactly one; Tuple: components

  static AbiType parse(std::string_view canonical_type);

  bool is_dynamic() const;
  /// Bytes this type occupies in the head section (32 when dynamic).
  std::size_t head_size() const;
  std::string canonical() const;
};

struct EventParam {
  std::string name;
  std::string type;  // canonical type string
  bool indexed = false;
};

/// One event's shape as declared in a contract ABI.
struct EventLayout {
  CanonicalSignature signature;
  TopicHash topic;  // signature_topic_hash(signature)
  std::vector<EventParam> params;
  bool anonymous = false;

  /// Index of the first param whose lowercased name contains `needle`
  /// and whose type is address, or -1.
  int find_address_param(std::string_view needle) const;
};

/// Marker for an indexed dynamic parameter: only the hash of the value is
/// recoverable from the log.
struct DynamicHash {
  TopicHash hash;
  bool operator==(const DynamicHash&) const = default;
};

class Value;
using ValueList = std::vector<Value>;
using Bytes = std::vector<std::uint8_t>;

/// A decoded ABI value. Uint/Int values are kept as raw 256-bit words.
class Value {
 public:
  using Variant = std::variant<Address, U256, bool, Bytes, std::string,
                               DynamicHash, ValueList>;

  Value() : v_(U256(0)) {}
  Value(Address v) : v_(v) {}
  Value(U256 v) : v_(std::move(v)) {}
  Value(bool v) : v_(v) {}
  Value(Bytes v) : v_(std::move(v)) {}
  Value(std::string v) : v_(std::move(v)) {}
  Value(DynamicHash v) : v_(v) {}
  Value(ValueList v) : v_(std::move(v)) {}
  Value(const char*) = delete;  // would otherwise convert to bool

  const Variant& get() const { return v_; }

  const Address* as_address() const { return std::get_if<Address>(&v_); }
  const U256* as_uint() const { return std::get_if<U256>(&v_); }
  const bool* as_bool() const { return std::get_if<bool>(&v_); }
  const Bytes* as_bytes() const { return std::get_if<Bytes>(&v_); }
  const std::string* as_string() const { return std::get_if<std::string>(&v_); }
  const ValueList* as_list() const { return std::get_if<ValueList>(&v_); }

  bool operator==(const Value&) const = default;

 private:
  Variant v_;
};

struct DecodedEvent {
  EventLayout layout;
  std::vector<std::pair<std::string, Value>> values;  // in param order
  EventLogRecord raw;

  const Value* value(std::string_view param_name) const;
};

/// Builds event layouts from a standard contract-ABI JSON array. Tuple
/// parameters are flattened to their canonical "(t1,t2,...)" form. Throws
/// AbiError when the document is not a well-formed ABI array.
std::vector<EventLayout> layouts_from_abi(const nlohmann::json& abi_document);

/// Canonical signature for one ABI entry (event or function).
CanonicalSignature signature_from_abi_entry(const nlohmann::json& entry);

/// Decodes a log against a layout. Indexed params are read from topics
/// 1..; non-indexed params are ABI-decoded from the data section; indexed
/// dynamic params yield DynamicHash. Throws AbiError on topic mismatch,
/// short data or malformed words.
DecodedEvent decode_event(const EventLogRecord& log,
                          const EventLayout& layout);

/// Scans the data section in 32-byte words; a word whose first 12 bytes
/// are zero and whose last 20 bytes are not all zero yields an address
/// candidate. Order preserved, duplicates kept, trailing partial word
/// ignored.
std::vector<Address> scavenge_addresses(std::span<const std::uint8_t> data);

/// Inverse of decode_event, used by fixture generation and round-trip
/// tests. `values` must match the layout's param count and types.
EventLogRecord encode_event(const EventLayout& layout,
                            std::span<const Value> values,
                            const Address& emitter,
                            std::uint64_t block_number, std::uint32_t tx_index,
                            std::uint32_t log_index);

/// ABI-encodes values as a tuple (the event data-section encoding).
Bytes encode_tuple(std::span<const AbiType> types,
                   std::span<const Value> values);

std::array<std::uint8_t, 32> u256_to_word(const U256& v);
U256 u256_from_word(std::span<const std::uint8_t> word);

}  // namespace metagov

#endif  // METAGOV_ABIDEC_HPP

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/abidec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "metagov/errors.hpp"
#include "metagov/keccak.hpp"

namespace metagov {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool is_container(const AbiType& t) {
  return t.kind == AbiType::Kind::Array || t.kind == AbiType::Kind::Tuple;
}

AbiType parse_elementary(std::string_view t) {
  AbiType out;
  if (t == "address") {
    out.kind = AbiType::Kind::Address;
    return out;
  }
  if (t == "bool") {
    out.kind = AbiType::Kind::Bool;
    return out;
  }
  if (t == "bytes") {
    out.kind = AbiType::Kind::Bytes;
    return out;
  }
  if (t == "string") {
    out.kind = AbiType::Kind::String;
    return out;
  }
  auto parse_suffix_int = [&](std::string_view digits) -> unsigned {
    unsigned v = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) {
      throw AbiError("bad type size in: " + std::string(t));
    }
    return v;
  };
  if (t.starts_with("uint") || t.starts_with("int")) {
    const bool is_uint = t.starts_with("uint");
    const std::string_view digits = t.substr(is_uint ? 4 : 3);
    out.kind = is_uint ? AbiType::Kind::Uint : AbiType::Kind::Int;
    out.bits = digits.empty() ? 256 : parse_suffix_int(digits);
    if (out.bits == 0 || out.bits > 256 || out.bits % 8 != 0) {
      throw AbiError("unsupported integer width: " + std::string(t));
    }
    return out;
  }
  if (t.starts_with("bytes")) {
    out.kind = AbiType::Kind::FixedBytes;
    out.byte_count = parse_suffix_int(t.substr(5));
    if (out.byte_count == 0 || out.byte_count > 32) {
      throw AbiError("unsupported bytesN width: " + std::string(t));
    }
    return out;
  }
  throw AbiError("unsupported ABI type: " + std::string(t));
}

std::vector<std::string_view> split_top_level(std::string_view list) {
  std::vector<std::string_view> out;
  if (list.empty()) return out;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    if (i == list.size() || (list[i] == ',' && depth == 0)) {
      out.push_back(list.substr(start, i - start));
      start = i + 1;
      continue;
    }
    if (list[i] == '(') ++depth;
    if (list[i] == ')') --depth;
  }
  return out;
}

}  // namespace

AbiType AbiType::parse(std::string_view t) {
  if (t.empty()) throw AbiError("empty ABI type");
  // Array suffix?
  if (t.back() == ']') {
    const auto open = t.rfind('[');
    if (open == std::string_view::npos) throw AbiError("bad array type: " + std::string(t));
    const std::string_view digits = t.substr(open + 1, t.size() - open - 2);
    AbiType arr;
    arr.kind = Kind::Array;
    if (digits.empty()) {
      arr.array_length = 0;
    } else {
      unsigned v = 0;
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || v == 0) {
        throw AbiError("bad array length in: " + std::string(t));
      }
      arr.array_length = v;
    }
    AbiType elem = parse(t.substr(0, open));
    if (elem.kind == Kind::Array) {
      throw AbiError("arrays of arrays are not supported: " + std::string(t));
    }
    arr.elems.push_back(std::move(elem));
    return arr;
  }
  if (t.front() == '(') {
    if (t.back() != ')') throw AbiError("bad tuple type: " + std::string(t));
    AbiType tup;
    tup.kind = Kind::Tuple;
    for (std::string_view part : split_top_level(t.substr(1, t.size() - 2))) {
      AbiType comp = parse(part);
      if (is_container(comp)) {
        throw AbiError("tuples containing containers are not supported: " +
                       std::string(t));
      }
      tup.elems.push_back(std::move(comp));
    }
    if (tup.elems.empty()) throw AbiError("empty tuple type: " + std::string(t));
    return tup;
  }
  return parse_elementary(t);
}

bool AbiType::is_dynamic() const {
  switch (kind) {
    case Kind::Bytes:
    case Kind::String:
      return true;
    case Kind::Array:
      return array_length == 0 || elems.front().is_dynamic();
    case Kind::Tuple:
      return std::any_of(elems.begin(), elems.end(),
                         [](const AbiType& e) { return e.is_dynamic(); });
    default:
      return false;
  }
}

std::size_t AbiType::head_size() const {
  if (is_dynamic()) return 32;
  switch (kind) {
    case Kind::Array: {
      return array_length * elems.front().head_size();
    }
    case Kind::Tuple: {
      std::size_t n = 0;
      for (const AbiType& e : elems) n += e.head_size();
      return n;
    }
    default:
      return 32;
  }
}

std::string AbiType::canonical() const {
  switch (kind) {
    case Kind::Address:
      return "address";
    case Kind::Bool:
      return "bool";
    case Kind::Bytes:
      return "bytes";
    case Kind::String:
      return "string";
    case Kind::Uint:
      return "uint" + std::to_string(bits);
    case Kind::Int:
      return "int" + std::to_string(bits);
    case Kind::FixedBytes:
      return "bytes" + std::to_string(byte_count);
    case Kind::Array:
      return elems.front().canonical() +
             (array_length == 0 ? "[]"
                                : "[" + std::to_string(array_length) + "]");
    case Kind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += elems[i].canonical();
      }
      out.push_back(')');
      return out;
    }
  }
  return {};
}

std::array<std::uint8_t, 32> u256_to_word(const U256& v) {
  std::array<std::uint8_t, 32> word{};
  Bytes raw;
  boost::multiprecision::export_bits(v, std::back_inserter(raw), 8);
  // export_bits emits a single zero byte for v == 0; normalize that away.
  if (raw.size() == 1 && raw[0] == 0) raw.clear();
  if (raw.size() > 32) throw AbiError("value exceeds 256 bits");
  std::copy(raw.begin(), raw.end(), word.begin() + (32 - raw.size()));
  return word;
}

U256 u256_from_word(std::span<const std::uint8_t> word) {
  if (word.size() != 32) throw AbiError("expected a 32-byte word");
  U256 v = 0;
  boost::multiprecision::import_bits(v, word.begin(), word.end(), 8);
  return v;
}

int EventLayout::find_address_param(std::string_view needle) const {
  const std::string lneedle = to_lower(needle);
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].type == "address" &&
        to_lower(params[i].name).find(lneedle) != std::string::npos) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

const Value* DecodedEvent::value(std::string_view param_name) const {
  for (const auto& [name, v] : values) {
    if (name == param_name) return &v;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// ABI document handling

namespace {

// Canonical type for one ABI input entry, flattening "tuple"/"tuple[k]"
// via its components.
std::string canonical_type_of(const nlohmann::json& input) {
  const std::string type = input.value("type", "");
  if (type.empty()) throw AbiError("ABI input without type");
  if (!type.starts_with("tuple")) return type;
  if (!input.contains("components") || !input["components"].is_array()) {
    throw AbiError("tuple type without components");
  }
  std::string inner = "(";
  bool first = true;
  for (const auto& comp : input["components"]) {
    if (!first) inner.push_back(',');
    first = false;
    inner += canonical_type_of(comp);
  }
  inner.push_back(')');
  return inner + type.substr(5);  // keep any array suffix
}

}  // namespace

CanonicalSignature signature_from_abi_entry(const nlohmann::json& entry) {
  CanonicalSignature sig;
  sig.name = entry.value("name", "");
  if (sig.name.empty()) throw AbiError("ABI entry without name");
  if (entry.contains("inputs")) {
    if (!entry["inputs"].is_array()) throw AbiError("ABI inputs not an array");
    for (const auto& input : entry["inputs"]) {
      sig.param_types.push_back(canonical_type_of(input));
    }
  }
  return sig;
}

std::vector<EventLayout> layouts_from_abi(const nlohmann::json& abi_document) {
  if (!abi_document.is_array()) {
    throw AbiError("ABI document is not a JSON array");
  }
  std::vector<EventLayout> out;
  for (const auto& entry : abi_document) {
    if (!entry.is_object() || entry.value("type", "") != "event") continue;
    EventLayout layout;
    layout.signature = signature_from_abi_entry(entry);
    layout.topic = signature_topic_hash(layout.signature);
    layout.anonymous = entry.value("anonymous", false);
    std::size_t indexed = 0;
    if (entry.contains("inputs")) {
      for (const auto& input : entry["inputs"]) {
        EventParam p;
        p.name = input.value("name", "");
        p.type = canonical_type_of(input);
        p.indexed = input.value("indexed", false);
        if (p.indexed) ++indexed;
        layout.params.push_back(std::move(p));
      }
    }
    if (indexed > 3) {
      throw AbiError("event declares more than 3 indexed params: " +
                     layout.signature.text());
    }
    out.push_back(std::move(layout));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decoding

namespace {

std::span<const std::uint8_t> slice(std::span<const std::uint8_t> data,
                                    std::size_t offset, std::size_t len,
                                    const char* what) {
  if (offset > data.size() || data.size() - offset < len) {
    throw AbiError(std::string("data too short reading ") + what);
  }
  return data.subspan(offset, len);
}

std::size_t read_size(std::span<const std::uint8_t> word, const char* what) {
  const U256 v = u256_from_word(word);
  if (v > (U256(1u) << 32)) {
    throw AbiError(std::string("implausible size for ") + what);
  }
  return static_cast<std::size_t>(v);
}

Value decode_static_word(const AbiType& type,
                         std::span<const std::uint8_t> word) {
  if (word.size() != 32) throw AbiError("static decode needs a 32-byte word");
  switch (type.kind) {
    case AbiType::Kind::Address: {
      for (std::size_t i = 0; i < 12; ++i) {
        if (word[i] != 0) throw AbiError("address word has nonzero padding");
      }
      std::array<std::uint8_t, 20> bytes{};
      std::copy(word.begin() + 12, word.end(), bytes.begin());
      return Value(Address(bytes));
    }
    case AbiType::Kind::Uint: {
      const std::size_t zero_prefix = 32 - type.bits / 8;
      for (std::size_t i = 0; i < zero_prefix; ++i) {
        if (word[i] != 0) {
          throw AbiError("uint" + std::to_string(type.bits) +
                         " word has nonzero padding");
        }
      }
      return Value(u256_from_word(word));
    }
    case AbiType::Kind::Int:
      // Raw word; consumers of signed fields interpret the two's
      // complement themselves.
      return Value(u256_from_word(word));
    case AbiType::Kind::Bool: {
      const U256 v = u256_from_word(word);
      if (v > 1) throw AbiError("bool word is not 0 or 1");
      return Value(v == 1);
    }
    case AbiType::Kind::FixedBytes: {
      for (std::size_t i = type.byte_count; i < 32; ++i) {
        if (word[i] != 0) throw AbiError("bytesN word has nonzero padding");
      }
      return Value(Bytes(word.begin(), word.begin() + type.byte_count));
    }
    default:
      throw AbiError("dynamic type where a static word was expected");
  }
}

Value decode_in_area(const AbiType& type, std::span<const std::uint8_t> area);

// Decodes a sequence of types laid out as a tuple within `area` (heads at
// the start, tails offset-addressed relative to `area`).
std::vector<Value> decode_tuple_in(std::span<const AbiType> types,
                                   std::span<const std::uint8_t> area) {
  std::vector<Value> out;
  out.reserve(types.size());
  std::size_t head = 0;
  for (const AbiType& t : types) {
    if (t.is_dynamic()) {
      const std::size_t offset =
          read_size(slice(area, head, 32, "offset"), "offset");
      out.push_back(decode_in_area(
          t, slice(area, offset, area.size() - offset, "tail")));
      head += 32;
    } else if (t.kind == AbiType::Kind::Tuple) {
      std::vector<Value> comps = decode_tuple_in(
          std::span<const AbiType>(t.elems),
          slice(area, head, t.head_size(), "static tuple"));
      out.push_back(Value(ValueList(comps.begin(), comps.end())));
      head += t.head_size();
    } else if (t.kind == AbiType::Kind::Array) {  // static fixed array
      std::vector<AbiType> elem_types(t.array_length, t.elems.front());
      std::vector<Value> elems = decode_tuple_in(
          std::span<const AbiType>(elem_types),
          slice(area, head, t.head_size(), "static array"));
      out.push_back(Value(ValueList(elems.begin(), elems.end())));
      head += t.head_size();
    } else {
      out.push_back(
          decode_static_word(t, slice(area, head, 32, "static value")));
      head += 32;
    }
  }
  return out;
}

// Decodes one dynamic value whose encoding starts at the head of `area`.
Value decode_in_area(const AbiType& type, std::span<const std::uint8_t> area) {
  switch (type.kind) {
    case AbiType::Kind::Bytes:
    case AbiType::Kind::String: {
      const std::size_t len =
          read_size(slice(area, 0, 32, "length"), "length");
      auto content = slice(area, 32, len, "bytes content");
      if (type.kind == AbiType::Kind::Bytes) {
        return Value(Bytes(content.begin(), content.end()));
      }
      return Value(std::string(content.begin(), content.end()));
    }
    case AbiType::Kind::Array: {
      std::size_t count = type.array_length;
      std::span<const std::uint8_t> body = area;
      if (type.array_length == 0) {
        count = read_size(slice(area, 0, 32, "array length"), "array length");
        body = slice(area, 32, area.size() - 32, "array body");
      }
      std::vector<AbiType> elem_types(count, type.elems.front());
      std::vector<Value> elems =
          decode_tuple_in(std::span<const AbiType>(elem_types), body);
      return Value(ValueList(elems.begin(), elems.end()));
    }
    case AbiType::Kind::Tuple: {
      std::vector<Value> comps =
          decode_tuple_in(std::span<const AbiType>(type.elems), area);
      return Value(ValueList(comps.begin(), comps.end()));
    }
    default:
      return decode_static_word(type, slice(area, 0, 32, "word"));
  }
}

}  // namespace

DecodedEvent decode_event(const EventLogRecord& log,
                          const EventLayout& layout) {
  if (layout.anonymous) {
    throw AbiError("anonymous event layouts cannot be matched by topic: " +
                   layout.signature.text());
  }
  if (log.topics.empty() || log.topics.front() != layout.topic) {
    throw AbiError("topic mismatch for " + layout.signature.text());
  }

  std::vector<const EventParam*> indexed_params;
  std::vector<AbiType> data_types;
  std::vector<std::size_t> data_positions;
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    if (layout.params[i].indexed) {
      indexed_params.push_back(&layout.params[i]);
    } else {
      data_types.push_back(AbiType::parse(layout.params[i].type));
      data_positions.push_back(i);
    }
  }
  if (log.topics.size() != indexed_params.size() + 1) {
    throw AbiError("log has " + std::to_string(log.topics.size() - 1) +
                   " indexed topics, layout expects " +
                   std::to_string(indexed_params.size()));
  }

  DecodedEvent out;
  out.layout = layout;
  out.raw = log;
  out.values.resize(layout.params.size());

  std::size_t topic_index = 1;
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    out.values[i].first = layout.params[i].name;
    if (!layout.params[i].indexed) continue;
    const AbiType t = AbiType::parse(layout.params[i].type);
    const auto& topic = log.topics[topic_index++];
    if (t.is_dynamic() || t.kind == AbiType::Kind::Tuple ||
        t.kind == AbiType::Kind::Array) {
      out.values[i].second = Value(DynamicHash{topic});
    } else {
      out.values[i].second = decode_static_word(t, topic.bytes());
    }
  }

  const std::vector<Value> data_values =
      decode_tuple_in(std::span<const AbiType>(data_types),
                      std::span<const std::uint8_t>(log.data));
  for (std::size_t j = 0; j < data_positions.size(); ++j) {
    out.values[data_positions[j]].second = data_values[j];
  }
  return out;
}

std::vector<Address> scavenge_addresses(std::span<const std::uint8_t> data) {
  std::vector<Address> out;
  for (std::size_t offset = 0; offset + 32 <= data.size(); offset += 32) {
    const auto word = data.subspan(offset, 32);
    const bool padded =
        std::all_of(word.begin(), word.begin() + 12,
                    [](std::uint8_t b) { return b == 0; });
    if (!padded) continue;
    const bool nonzero = std::any_of(word.begin() + 12, word.end(),
                                     [](std::uint8_t b) { return b != 0; });
    if (!nonzero) continue;
    std::array<std::uint8_t, 20> bytes{};
    std::copy(word.begin() + 12, word.end(), bytes.begin());
    out.emplace_back(bytes);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Encoding (fixture generation and round-trip tests)

namespace {

void append(Bytes& out, std::span<const std::uint8_t> bytes) {
  out.insert(out.end(), bytes.begin(), bytes.end());
}

std::array<std::uint8_t, 32> encode_static_word(const AbiType& type,
                                                const Value& value) {
  switch (type.kind) {
    case AbiType::Kind::Address: {
      const Address* a = value.as_address();
      if (!a) throw AbiError("value is not an address");
      std::array<std::uint8_t, 32> word{};
      std::copy(a->bytes().begin(), a->bytes().end(), word.begin() + 12);
      return word;
    }
    case AbiType::Kind::Uint:
    case AbiType::Kind::Int: {
      const U256* v = value.as_uint();
      if (!v) throw AbiError("value is not an integer");
      return u256_to_word(*v);
    }
    case AbiType::Kind::Bool: {
      const bool* b = value.as_bool();
      if (!b) throw AbiError("value is not a bool");
      return u256_to_word(U256(*b ? 1 : 0));
    }
    case AbiType::Kind::FixedBytes: {
      const Bytes* b = value.as_bytes();
      if (!b || b->size() != type.byte_count) {
        throw AbiError("value does not fit bytes" +
                       std::to_string(type.byte_count));
      }
      std::array<std::uint8_t, 32> word{};
      std::copy(b->begin(), b->end(), word.begin());
      return word;
    }
    default:
      throw AbiError("dynamic type has no static word encoding");
  }
}

Bytes encode_in_area(const AbiType& type, const Value& value);

Bytes encode_tuple_in(std::span<const AbiType> types,
                      std::span<const Value> values) {
  if (types.size() != values.size()) {
    throw AbiError("value count does not match type count");
  }
  std::size_t head_bytes = 0;
  for (const AbiType& t : types) head_bytes += t.head_size();

  Bytes head, tail;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const AbiType& t = types[i];
    if (t.is_dynamic()) {
      append(head, u256_to_word(U256(head_bytes + tail.size())));
      const Bytes encoded = encode_in_area(t, values[i]);
      append(tail, encoded);
    } else if (t.kind == AbiType::Kind::Tuple ||
               t.kind == AbiType::Kind::Array) {
      append(head, encode_in_area(t, values[i]));
    } else {
      append(head, encode_static_word(t, values[i]));
    }
  }
  append(head, tail);
  return head;
}

Bytes encode_in_area(const AbiType& type, const Value& value) {
  switch (type.kind) {
    case AbiType::Kind::Bytes:
    case AbiType::Kind::String: {
      Bytes content;
      if (type.kind == AbiType::Kind::Bytes) {
        const Bytes* b = value.as_bytes();
        if (!b) throw AbiError("value is not bytes");
        content = *b;
      } else {
        const std::string* s = value.as_string();
        if (!s) throw AbiError("value is not a string");
        content.assign(s->begin(), s->end());
      }
      Bytes out;
      append(out, u256_to_word(U256(content.size())));
      append(out, content);
      if (content.size() % 32 != 0) {
        out.insert(out.end(), 32 - content.size() % 32, 0);
      }
      return out;
    }
    case AbiType::Kind::Array: {
      const ValueList* elems = value.as_list();
      if (!elems) throw AbiError("value is not a list");
      if (type.array_length != 0 && elems->size() != type.array_length) {
        throw AbiError("fixed array length mismatch");
      }
      Bytes out;
      if (type.array_length == 0) {
        append(out, u256_to_word(U256(elems->size())));
      }
      std::vector<AbiType> elem_types(elems->size(), type.elems.front());
      append(out, encode_tuple_in(std::span<const AbiType>(elem_types),
                                  std::span<const Value>(*elems)));
      return out;
    }
    case AbiType::Kind::Tuple: {
      const ValueList* comps = value.as_list();
      if (!comps || comps->size() != type.elems.size()) {
        throw AbiError("tuple value arity mismatch");
      }
      return encode_tuple_in(std::span<const AbiType>(type.elems),
                             std::span<const Value>(*comps));
    }
    default: {
      Bytes out;
      append(out, encode_static_word(type, value));
      return out;
    }
  }
}

// Topic for an indexed dynamic value: the hash of its in-place encoding
// (raw content for bytes/string).
TopicHash indexed_dynamic_topic(const AbiType& type, const Value& value) {
  if (type.kind == AbiType::Kind::Bytes) {
    const Bytes* b = value.as_bytes();
    if (!b) throw AbiError("value is not bytes");
    return TopicHash(crypto::keccak256(std::span<const std::uint8_t>(*b)));
  }
  if (type.kind == AbiType::Kind::String) {
    const std::string* s = value.as_string();
    if (!s) throw AbiError("value is not a string");
    return TopicHash(crypto::keccak256(*s));
  }
  const ValueList* elems = value.as_list();
  if (!elems) throw AbiError("value is not a list");
  Bytes packed;
  if (type.kind == AbiType::Kind::Tuple) {
    if (elems->size() != type.elems.size()) {
      throw AbiError("tuple value arity mismatch");
    }
    for (std::size_t i = 0; i < elems->size(); ++i) {
      append(packed, encode_static_word(type.elems[i], (*elems)[i]));
    }
  } else {
    // Array of static elementary values; indexed arrays of containers are
    // not something we ever need to synthesize.
    for (const Value& v : *elems) {
      append(packed, encode_static_word(type.elems.front(), v));
    }
  }
  return TopicHash(crypto::keccak256(std::span<const std::uint8_t>(packed)));
}

}  // namespace

Bytes encode_tuple(std::span<const AbiType> types,
                   std::span<const Value> values) {
  return encode_tuple_in(types, values);
}

EventLogRecord encode_event(const EventLayout& layout,
                            std::span<const Value> values,
                            const Address& emitter,
                            std::uint64_t block_number, std::uint32_t tx_index,
                            std::uint32_t log_index) {
  if (values.size() != layout.params.size()) {
    throw AbiError("value count does not match layout params");
  }
  EventLogRecord log;
  log.emitter = emitter;
  log.block_number = block_number;
  log.tx_index = tx_index;
  log.log_index = log_index;
  if (!layout.anonymous) log.topics.push_back(layout.topic);

  std::vector<AbiType> data_types;
  std::vector<Value> data_values;
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    const AbiType t = AbiType::parse(layout.params[i].type);
    if (layout.params[i].indexed) {
      if (t.is_dynamic() || t.kind == AbiType::Kind::Tuple ||
          t.kind == AbiType::Kind::Array) {
        log.topics.push_back(indexed_dynamic_topic(t, values[i]));
      } else {
        log.topics.push_back(
            TopicHash(encode_static_word(t, values[i])));
      }
    } else {
      data_types.push_back(t);
      data_values.push_back(values[i]);
    }
  }
  if (log.topics.size() > 4) {
    throw AbiError("event would need more than 4 topics");
  }
  log.data = encode_tuple_in(std::span<const AbiType>(data_types),
                             std::span<const Value>(data_values));
  return log;
}

}  // namespace metagov

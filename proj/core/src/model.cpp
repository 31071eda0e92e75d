// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/model.hpp"

#include <algorithm>
#include <cctype>

#include "metagov/errors.hpp"
#include "metagov/hex.hpp"
#include "metagov/keccak.hpp"

namespace metagov {

std::string u256_to_string(const U256& v) { return v.str(); }

U256 u256_from_string(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer literal");
  try {
    return U256(std::string(text));
  } catch (const std::exception&) {
    throw ParseError("invalid integer literal: " + std::string(text));
  }
}

Address Address::parse(std::string_view text) {
  if (text.size() < 2 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    throw ParseError("address missing 0x prefix: " + std::string(text));
  }
  const std::string_view digits = text.substr(2);
  if (digits.size() != 2 * kSize) {
    throw ParseError("address has wrong length: " + std::string(text));
  }
  Address out;
  for (std::size_t i = 0; i < kSize; ++i) {
    const int hi = hex::nibble(digits[2 * i]);
    const int lo = hex::nibble(digits[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParseError("address has invalid hex: " + std::string(text));
    }
    out.bytes_[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

std::string Address::hex() const { return hex::encode0x(bytes_); }

std::string Address::checksum() const {
  const std::string plain = hex::encode(bytes_);
  const auto digest = crypto::keccak256(plain);
  std::string out = "0x";
  out.reserve(2 + plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i) {
    const char c = plain[i];
    const int hash_nibble =
        (i % 2 == 0) ? (digest[i / 2] >> 4) : (digest[i / 2] & 0x0f);
    out.push_back(
        (c >= 'a' && c <= 'f' && hash_nibble >= 8)
            ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
            : c);
  }
  return out;
}

bool Address::is_zero() const {
  return std::all_of(bytes_.begin(), bytes_.end(),
                     [](std::uint8_t b) { return b == 0; });
}

Address parse_address(std::string_view text) { return Address::parse(text); }

TopicHash TopicHash::parse(std::string_view text) {
  const auto bytes = hex::decode0x(text);
  if (bytes.size() != kSize) {
    throw ParseError("topic hash has wrong length: " + std::string(text));
  }
  TopicHash out;
  std::copy(bytes.begin(), bytes.end(), out.bytes_.begin());
  return out;
}

std::string TopicHash::hex() const { return hex::encode0x(bytes_); }

std::string CanonicalSignature::text() const {
  std::string out = name;
  out.push_back('(');
  for (std::size_t i = 0; i < param_types.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += param_types[i];
  }
  out.push_back(')');
  return out;
}

namespace {

// Validates one canonical type: an elementary name ([a-z0-9]+) or a tuple
// "(t,...)", either followed by any number of array suffixes "[]"/"[N]".
bool valid_type(std::string_view t);

bool valid_type_list(std::string_view list) {
  if (list.empty()) return true;
  std::size_t depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    if (i == list.size() || (list[i] == ',' && depth == 0)) {
      if (!valid_type(list.substr(start, i - start))) return false;
      start = i + 1;
      continue;
    }
    if (list[i] == '(') ++depth;
    if (list[i] == ')') {
      if (depth == 0) return false;
      --depth;
    }
  }
  return depth == 0;
}

bool valid_type(std::string_view t) {
  if (t.empty()) return false;
  // Strip array suffixes right to left.
  while (t.back() == ']') {
    const auto open = t.rfind('[');
    if (open == std::string_view::npos) return false;
    for (std::size_t i = open + 1; i + 1 < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    t = t.substr(0, open);
    if (t.empty()) return false;
  }
  if (t.front() == '(') {
    if (t.back() != ')') return false;
    return valid_type_list(t.substr(1, t.size() - 2));
  }
  return std::all_of(t.begin(), t.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
  });
}

// Splits a top-level comma-separated type list (tuples keep their commas).
std::vector<std::string> split_types(std::string_view list) {
  std::vector<std::string> out;
  if (list.empty()) return out;
  std::size_t depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    if (i == list.size() || (list[i] == ',' && depth == 0)) {
      out.emplace_back(list.substr(start, i - start));
      start = i + 1;
      continue;
    }
    if (list[i] == '(') ++depth;
    if (list[i] == ')') --depth;
  }
  return out;
}

}  // namespace

CanonicalSignature CanonicalSignature::parse(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError("canonical signature contains whitespace: " +
                       std::string(text));
    }
  }
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ParseError("signature missing parameter list: " + std::string(text));
  }
  const std::string_view name = text.substr(0, open);
  if (name.empty()) {
    throw ParseError("signature has empty name: " + std::string(text));
  }
  for (char c : name) {
    if (c == '(' || c == ')' || c == ',') {
      throw ParseError("signature name has invalid character: " +
                       std::string(text));
    }
  }
  const std::string_view list = text.substr(open + 1, text.size() - open - 2);
  if (!valid_type_list(list)) {
    throw ParseError("signature has invalid parameter types: " +
                     std::string(text));
  }
  CanonicalSignature sig;
  sig.name = std::string(name);
  sig.param_types = split_types(list);
  // Reject trailing garbage such as "f(a)b" — the ')' we used must close
  // the list opened by the first '('.
  if (sig.text() != text) {
    throw ParseError("signature is not in canonical form: " +
                     std::string(text));
  }
  return sig;
}

TopicHash signature_topic_hash(const CanonicalSignature& sig) {
  return TopicHash(crypto::keccak256(sig.text()));
}

std::array<std::uint8_t, 4> function_selector(const CanonicalSignature& sig) {
  const auto digest = crypto::keccak256(sig.text());
  return {digest[0], digest[1], digest[2], digest[3]};
}

std::string_view call_type_name(CallType t) {
  switch (t) {
    case CallType::Call:
      return "call";
    case CallType::DelegateCall:
      return "delegatecall";
    case CallType::StaticCall:
      return "staticcall";
    case CallType::Create:
      return "create";
  }
  return "call";
}

CallType call_type_from_name(std::string_view name) {
  if (name == "call") return CallType::Call;
  if (name == "delegatecall") return CallType::DelegateCall;
  if (name == "staticcall") return CallType::StaticCall;
  if (name == "create") return CallType::Create;
  throw ParseError("unknown call type: " + std::string(name));
}

std::string_view dao_source_name(DaoSource s) {
  switch (s) {
    case DaoSource::SeedList:
      return "seed";
    case DaoSource::Expansion:
      return "expansion";
    case DaoSource::LabelInference:
      return "label";
  }
  return "seed";
}

DaoSource dao_source_from_name(std::string_view name) {
  if (name == "seed") return DaoSource::SeedList;
  if (name == "expansion") return DaoSource::Expansion;
  if (name == "label") return DaoSource::LabelInference;
  throw ParseError("unknown dao source: " + std::string(name));
}

}  // namespace metagov

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/labeler.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "metagov/errors.hpp"

namespace metagov {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.emplace_back(trim(std::string_view(line).substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string_view label_source_name(LabelSource s) {
  switch (s) {
    case LabelSource::PublicNameTag:
      return "public-name-tag";
    case LabelSource::LocalOverride:
      return "local-override";
    case LabelSource::SnapshotSpace:
      return "snapshot-space";
  }
  return "public-name-tag";
}

std::string normalize_tag_to_dao(std::string_view tag) {
  const auto colon = tag.find(':');
  if (colon != std::string_view::npos) tag = tag.substr(0, colon);
  return to_lower(trim(tag));
}

void LabelStore::load_fixture(const std::filesystem::path& labels_jsonl) {
  std::ifstream in(labels_jsonl);
  if (!in) {
    throw SourceUnavailableError("cannot open " + labels_jsonl.string());
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = nlohmann::json::parse(line);
    add_public_tag(Address::parse(row.at("address").get<std::string>()),
                   row.at("tag").get<std::string>());
  }
}

void LabelStore::load_overrides(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw SourceUnavailableError("cannot open " + csv.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto fields = split_csv_row(line);
    if (fields.size() < 2) {
      throw ParseError(csv.string() + ":" + std::to_string(line_no) +
                       ": expected address,tag[,dao-id]");
    }
    std::optional<std::string> dao_id;
    if (fields.size() >= 3 && !fields[2].empty()) dao_id = fields[2];
    add_override(Address::parse(fields[0]), fields[1], std::move(dao_id));
  }
}

void LabelStore::add_public_tag(const Address& addr, std::string tag) {
  public_tags_[addr] = std::move(tag);
}

void LabelStore::add_override(const Address& addr, std::string tag,
                              std::optional<std::string> dao_id) {
  overrides_[addr] = Entry{std::move(tag), std::move(dao_id)};
}

void LabelStore::add_space_hint(const Address& addr, std::string space_id) {
  space_hints_[addr] = std::move(space_id);
}

LabelRecord LabelStore::label(const Address& addr) const {
  LabelRecord record;
  record.address = addr;
  if (const auto it = overrides_.find(addr); it != overrides_.end()) {
    record.tag = it->second.tag;
    record.source = LabelSource::LocalOverride;
    record.dao_id = it->second.dao_id ? it->second.dao_id
                                      : std::optional<std::string>(
                                            normalize_tag_to_dao(it->second.tag));
    return record;
  }
  if (const auto it = public_tags_.find(addr); it != public_tags_.end()) {
    record.tag = it->second;
    record.source = LabelSource::PublicNameTag;
    record.dao_id = normalize_tag_to_dao(it->second);
    return record;
  }
  if (const auto it = space_hints_.find(addr); it != space_hints_.end()) {
    record.tag = it->second;
    record.source = LabelSource::SnapshotSpace;
    record.dao_id = to_lower(it->second);
    return record;
  }
  return record;  // unlabelled: empty tag, no dao id
}

std::vector<LabelRecord> LabelStore::label_accounts(
    const std::set<Address>& addresses) const {
  std::vector<LabelRecord> out;
  out.reserve(addresses.size());
  for (const Address& addr : addresses) out.push_back(label(addr));
  return out;
}

std::optional<Address> LabelStore::voting_power_hint(
    const std::string& dao_id) const {
  std::optional<Address> best;
  auto consider = [&](const Address& addr, const std::string& tag,
                      const std::optional<std::string>& explicit_dao) {
    const std::string id =
        explicit_dao ? *explicit_dao : normalize_tag_to_dao(tag);
    if (id != dao_id) return;
    const auto colon = tag.find(':');
    const std::string role =
        to_lower(colon == std::string::npos ? "" : tag.substr(colon + 1));
    if (role.find("token") == std::string::npos) return;
    if (!best || addr < *best) best = addr;
  };
  for (const auto& [addr, entry] : overrides_) {
    consider(addr, entry.tag, entry.dao_id);
  }
  for (const auto& [addr, tag] : public_tags_) {
    if (!overrides_.contains(addr)) consider(addr, tag, std::nullopt);
  }
  return best;
}

std::size_t LabelStore::size() const {
  std::set<Address> keys;
  for (const auto& [a, e] : overrides_) keys.insert(a);
  for (const auto& [a, t] : public_tags_) keys.insert(a);
  for (const auto& [a, s] : space_hints_) keys.insert(a);
  return keys.size();
}

std::string dao_group_key(const LabelRecord& record) {
  if (record.dao_id && !record.dao_id->empty()) return *record.dao_id;
  return record.address.hex();
}

std::map<std::string, std::set<Address>> group_by_dao(
    const std::vector<LabelRecord>& records) {
  std::map<std::string, std::set<Address>> groups;
  for (const LabelRecord& r : records) {
    groups[dao_group_key(r)].insert(r.address);
  }
  return groups;
}

}  // namespace metagov

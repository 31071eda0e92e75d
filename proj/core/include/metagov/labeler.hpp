// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_LABELER_HPP
#define METAGOV_LABELER_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metagov/model.hpp"

namespace metagov {

enum class LabelSource {
  PublicNameTag,
  LocalOverride,
  SnapshotSpace,
};

std::string_view label_source_name(LabelSource s);

struct LabelRecord {
  Address address;
  std::optional<std::string> tag;
  LabelSource source = LabelSource::PublicNameTag;
  std::optional<std::string> dao_id;
};

/// "Liquity: Bounties" -> "liquity": everything after the first ':' is
/// dropped, the rest lowercased and trimmed. A tag without a colon maps
/// to the whole tag lowercased.
std::string normalize_tag_to_dao(std::string_view tag);

/// Tags and overrides for contract accounts. Priority when several
/// sources know an address: LocalOverride > PublicNameTag > SnapshotSpace.
class LabelStore {
 public:
  /// labels.jsonl rows: {"address": "0x..", "tag": "..."}.
  void load_fixture(const std::filesystem::path& labels_jsonl);

  /// Override CSV rows: address,tag,dao-id ('#' comments allowed; dao-id
  /// may be empty to fall back to tag normalization).
  void load_overrides(const std::filesystem::path& csv);

  void add_public_tag(const Address& addr, std::string tag);
  void add_override(const Address& addr, std::string tag,
                    std::optional<std::string> dao_id);
  /// Space-derived hints have the lowest priority; the space id doubles
  /// as the dao id.
  void add_space_hint(const Address& addr, std::string space_id);

  /// One record per input address (same size as the input), resolved by
  /// source priority. Unlabelled addresses get an empty record.
  std::vector<LabelRecord> label_accounts(const std::set<Address>& addresses) const;

  LabelRecord label(const Address& addr) const;

  /// The voting-power address for a DAO discovered via tags: an address
  /// whose dao id matches and whose tag names a token (the tag text after
  /// the colon contains "token"). Lowest address wins when several match.
  std::optional<Address> voting_power_hint(const std::string& dao_id) const;

  std::size_t size() const;

 private:
  struct Entry {
    std::string tag;
    std::optional<std::string> dao_id;  // explicit override only
  };
  std::map<Address, Entry> overrides_;
  std::map<Address, std::string> public_tags_;
  std::map<Address, std::string> space_hints_;
};

/// Groups labelled addresses by dao id; unlabelled addresses become
/// singleton groups keyed by their lowercase hex form. The result is a
/// partition of the input.
std::map<std::string, std::set<Address>> group_by_dao(
    const std::vector<LabelRecord>& records);

/// Group key for one record (dao id, or the address itself).
std::string dao_group_key(const LabelRecord& record);

}  // namespace metagov

#endif  // METAGOV_LABELER_HPP

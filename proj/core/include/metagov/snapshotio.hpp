// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_SNAPSHOTIO_HPP
#define METAGOV_SNAPSHOTIO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metagov/chainio.hpp"
#include "metagov/model.hpp"

namespace metagov {

struct SpaceStrategy {
  std::string name;
  std::vector<Address> referenced_addresses;
};

/// One off-chain voting space with the on-chain addresses its strategies
/// reference.
struct SpaceRecord {
  std::string space_id;
  std::uint64_t follower_count = 0;
  std::vector<SpaceStrategy> strategies;
};

struct OffchainVote {
  std::string space_id;
  std::string proposal_id;
  Address voter;
  AccountKind voter_kind = AccountKind::ExternallyOwned;
  nlohmann::json choice;  // opaque; schemes vary per space
  double voting_power = 0.0;
  std::int64_t timestamp = 0;

  std::string id() const;  // "off:<space>:<proposal>:<voter>"
};

struct ProposalText {
  std::string space_id;
  std::string proposal_id;
  std::string title;
  std::string body;
};

/// Source of space / vote / proposal data: a recorded dump directory in
/// tests, the GraphQL API live.
class SnapshotSource {
 public:
  virtual ~SnapshotSource() = default;
  virtual std::vector<SpaceRecord> fetch_spaces() = 0;
  virtual std::vector<OffchainVote> fetch_votes(const std::string& space_id) = 0;
  virtual std::vector<ProposalText> fetch_proposals(
      const std::string& space_id) = 0;
};

/// Dump directory with spaces.jsonl / votes.jsonl / proposals.jsonl.
/// Absent files read as empty; malformed rows are skipped and reported.
class FixtureSnapshotSource : public SnapshotSource {
 public:
  explicit FixtureSnapshotSource(std::filesystem::path dir)
      : dir_(std::move(dir)) {}

  std::vector<SpaceRecord> fetch_spaces() override;
  std::vector<OffchainVote> fetch_votes(const std::string& space_id) override;
  std::vector<ProposalText> fetch_proposals(
      const std::string& space_id) override;

  const std::vector<std::string>& skipped_rows() const { return skipped_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> skipped_;
};

/// Reverse index from referenced address to the spaces whose strategies
/// mention it. Build is exclusive; lookups may run concurrently.
class SpaceIndex {
 public:
  void add(SpaceRecord space);

  std::vector<const SpaceRecord*> lookup(const Address& addr) const;

  const SpaceRecord* space_by_id(const std::string& space_id) const;

  /// Among spaces referencing the address with at least `min_followers`
  /// followers, the most followed one; ties break to the lexicographically
  /// smallest space id. Absent when none qualify.
  std::optional<SpaceRecord> resolve_space(
      const Address& voting_power, std::uint64_t min_followers = 50) const;

  std::size_t space_count() const { return spaces_.size(); }
  std::size_t indexed_address_count() const { return by_address_.size(); }

 private:
  std::map<std::string, SpaceRecord> spaces_;
  std::map<Address, std::vector<std::string>> by_address_;
};

/// Builds the reverse index over every space the source knows.
SpaceIndex build_space_index(SnapshotSource& source);

/// All votes for a space, voter kinds resolved against on-chain code
/// presence at `at_block`. Duplicate (proposal, voter) rows collapse to
/// the last occurrence in source order; the result is sorted by
/// (timestamp, proposal, voter).
std::vector<OffchainVote> fetch_offchain_votes(SnapshotSource& source,
                                               const std::string& space_id,
                                               ChainReader& chain,
                                               std::uint64_t at_block);

/// Collects every address-shaped string anywhere in a strategy params
/// document. Strategies nest addresses at arbitrary keys, so the whole
/// document is walked.
std::vector<Address> extract_strategy_addresses(const nlohmann::json& params);

void to_json(nlohmann::json& j, const SpaceRecord& r);
void from_json(const nlohmann::json& j, SpaceRecord& r);
void to_json(nlohmann::json& j, const OffchainVote& r);
void from_json(const nlohmann::json& j, OffchainVote& r);
void to_json(nlohmann::json& j, const ProposalText& r);
void from_json(const nlohmann::json& j, ProposalText& r);

}  // namespace metagov

#endif  // METAGOV_SNAPSHOTIO_HPP

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_VOTERSCAN_HPP
#define METAGOV_VOTERSCAN_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metagov/abidec.hpp"
#include "metagov/chainio.hpp"
#include "metagov/sigstore.hpp"

namespace metagov {

/// Which event topic a governor's voting activity lives under, chosen as
/// the most frequent topic 0 across the governor's logs. Logs without a
/// topic 0 (anonymous events) are counted separately and never selected.
struct VotingEventSelection {
  Address governor;
  std::optional<TopicHash> topic;  // head of the frequency table
  std::optional<EventLayout> layout;  // resolved from the governor's ABI
  std::vector<std::pair<TopicHash, std::uint64_t>> frequency_table;
  std::uint64_t anonymous_logs = 0;
  bool tie_at_head = false;  // head count shared; lower topic bytes won
};

/// One decoded vote. proposal_id / support / weight are present only when
/// the selected layout exposes them; weights stay in raw token base units.
struct VoteRecord {
  Address governor;
  Address voter;
  AccountKind voter_kind = AccountKind::ExternallyOwned;
  std::optional<U256> proposal_id;
  std::optional<std::uint8_t> support;  // bool votes map to 0/1
  std::optional<U256> weight;
  std::uint64_t block_number = 0;
  std::uint32_t tx_index = 0;
  std::uint32_t log_index = 0;

  std::string id() const;  // "vote:<governor>:<block>:<tx>:<log>"
};

struct VoterScanResult {
  VotingEventSelection selection;
  std::vector<VoteRecord> records;
  std::vector<std::string> decode_failures;  // per-log, non-fatal
};

/// One delegation of voting rights observed on a voting-power contract.
struct DelegationRecord {
  Address token;  // the voting-power contract the delegation applies to
  Address delegator;
  Address delegate;
  bool self_delegation = false;  // delegator == delegate
  AccountKind delegator_kind = AccountKind::ExternallyOwned;
  AccountKind delegate_kind = AccountKind::ExternallyOwned;
  std::uint64_t block_number = 0;
  std::uint32_t tx_index = 0;
  std::uint32_t log_index = 0;

  std::string id() const;  // "del:<token>:<block>:<tx>:<log>"
};

struct DelegationScan {
  bool abi_available = true;  // false: contract has no verified ABI (flag)
  std::vector<DelegationRecord> records;
  std::vector<std::string> notes;
};

/// Builds the topic-frequency table over every log the governor emitted
/// in range and selects the head as the voting event. Tie at the head
/// breaks to the lower topic bytes.
VotingEventSelection select_voting_event(ChainReader& chain,
                                         const Address& governor,
                                         const ScanRange& range);

/// Extracts one VoteRecord per log matching the selected voting event.
/// The voter is taken from an address param whose name contains "voter";
/// when the layout has no such param (or no layout resolved at all), the
/// data section is scavenged for addresses instead, one record per hit.
/// Per-log decode failures are collected, not fatal.
VoterScanResult extract_vote_records(ChainReader& chain,
                                     const Address& governor,
                                     const ScanRange& range);

/// The contract-account voters of a governor: exactly the voters of
/// extract_vote_records whose account kind (at the range end) is
/// Contract, deduplicated.
std::set<Address> identify_multisig_voters(ChainReader& chain,
                                           const Address& governor,
                                           const ScanRange& range);

/// Finds delegation events in the voting-power contract's ABI (keyword:
/// "delegate", events only), decodes every matching log, and keeps the
/// records where at least one party is a contract account. A layout that
/// does not expose both a delegator and a delegate address param cannot
/// produce records and is skipped with a note.
DelegationScan resolve_delegations(ChainReader& chain,
                                   const Address& voting_power,
                                   const ScanRange& range,
                                   const KeywordPolicy& policy = {});

}  // namespace metagov

#endif  // METAGOV_VOTERSCAN_HPP

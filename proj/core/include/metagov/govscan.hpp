// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_GOVSCAN_HPP
#define METAGOV_GOVSCAN_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metagov/chainio.hpp"
#include "metagov/sigstore.hpp"

namespace metagov {

/// A contract that invokes the input address, has a usable ABI and
/// carries governance keywords in its signature names.
struct GovernanceCandidate {
  Address address;
  std::uint64_t invocation_count = 0;
  std::vector<std::string> matched_keywords;
  /// Set when the ABI used for classification came from a delegatecall
  /// implementation rather than the candidate itself (proxy pattern).
  std::optional<Address> classified_via;
};

/// An invocator that was considered and rejected, with the reason. Kept
/// so a detection is auditable end to end.
struct RejectedInvocator {
  Address address;
  std::uint64_t invocation_count = 0;
  std::string reason;
};

/// Result of the governance-contract identification heuristic.
///
/// Invariants: `chosen`, when present, is a candidate with the maximal
/// invocation count; every candidate passed the ABI and keyword filters;
/// the input address is never a candidate.
struct GovernanceDetection {
  Address input;
  ScanRange range;
  std::vector<GovernanceCandidate> candidates;  // count desc, address asc
  std::optional<Address> chosen;
  std::vector<RejectedInvocator> rejected;
  bool tie_broken = false;  // chosen shared its count with another candidate

  nlohmann::json to_json() const;
  static GovernanceDetection from_json(const nlohmann::json& j);
};

/// Identifies the governance contract wielding power over a voting-power
/// contract address.
///
/// The invocators of `input` are filtered to contract accounts with a
/// verified ABI whose event/function names match a governance keyword;
/// the candidate that called `input` most often wins. Ties break to the
/// lowest address bytes. "No governor found" is a value (chosen absent),
/// never an error.
///
/// Proxy mitigation: an invocator without a usable ABI of its own is
/// classified through the ABI of its most-frequent delegatecall target,
/// while remaining the candidate itself.
GovernanceDetection identify_governance_contract(
    ChainReader& chain, const Address& input, const ScanRange& range,
    const KeywordPolicy& policy = {});

}  // namespace metagov

#endif  // METAGOV_GOVSCAN_HPP

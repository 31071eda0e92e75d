// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/voterscan.hpp"

#include <algorithm>
#include <cctype>
#include <map>

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

// account_kind memoized at one block height; scans ask about the same
// voters over and over.
class KindCache {
 public:
  KindCache(ChainReader& chain, std::uint64_t block)
      : chain_(chain), block_(block) {}

  AccountKind operator()(const Address& addr) {
    auto it = cache_.find(addr);
    if (it == cache_.end()) {
      it = cache_.emplace(addr, chain_.account_kind(addr, block_)).first;
    }
    return it->second;
  }

 private:
  ChainReader& chain_;
  std::uint64_t block_;
  std::map<Address, AccountKind> cache_;
};

bool is_uint_type(std::string_view type) {
  return type.starts_with("uint") &&
         std::all_of(type.begin() + 4, type.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c));
         });
}

std::optional<U256> uint_param(const DecodedEvent& ev,
                               const EventLayout& layout,
                               auto&& name_predicate) {
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    const EventParam& p = layout.params[i];
    if (!name_predicate(to_lower(p.name))) continue;
    if (!is_uint_type(p.type)) continue;
    if (const U256* v = ev.values[i].second.as_uint()) return *v;
  }
  return std::nullopt;
}

void fill_vote_fields(VoteRecord& record, const DecodedEvent& ev,
                      const EventLayout& layout) {
  record.proposal_id = uint_param(ev, layout, [](const std::string& n) {
    return n.find("proposal") != std::string::npos || n == "id";
  });
  record.weight = uint_param(ev, layout, [](const std::string& n) {
    return n.find("weight") != std::string::npos ||
           n.find("votingpower") != std::string::npos || n == "votes";
  });
  // support: bool params map to 0/1, small uints are taken verbatim.
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    const EventParam& p = layout.params[i];
    if (to_lower(p.name).find("support") == std::string::npos) continue;
    if (const bool* b = ev.values[i].second.as_bool()) {
      record.support = *b ? 1 : 0;
      break;
    }
    if (is_uint_type(p.type)) {
      if (const U256* v = ev.values[i].second.as_uint(); v && *v <= 255) {
        record.support = static_cast<std::uint8_t>(*v);
        break;
      }
    }
  }
}

}  // namespace

std::string VoteRecord::id() const {
  return "vote:" + governor.hex() + ":" + std::to_string(block_number) + ":" +
         std::to_string(tx_index) + ":" + std::to_string(log_index);
}

std::string DelegationRecord::id() const {
  return "del:" + token.hex() + ":" + std::to_string(block_number) + ":" +
         std::to_string(tx_index) + ":" + std::to_string(log_index);
}

VotingEventSelection select_voting_event(ChainReader& chain,
                                         const Address& governor,
                                         const ScanRange& range) {
  VotingEventSelection sel;
  sel.governor = governor;

  std::map<TopicHash, std::uint64_t> counts;
  for (const EventLogRecord& log : chain.fetch_logs(governor, range)) {
    if (const auto topic = log.topic0()) {
      ++counts[*topic];
    } else {
      ++sel.anonymous_logs;
    }
  }
  sel.frequency_table.assign(counts.begin(), counts.end());
  std::sort(sel.frequency_table.begin(), sel.frequency_table.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (sel.frequency_table.empty()) return sel;  // no-logs: empty, flagged

  sel.topic = sel.frequency_table.front().first;
  sel.tie_at_head = sel.frequency_table.size() > 1 &&
                    sel.frequency_table[1].second ==
                        sel.frequency_table[0].second;

  const ContractMetadata meta = chain.fetch_contract_metadata(governor);
  if (meta.abi_available && meta.abi_document) {
    for (EventLayout& layout : layouts_from_abi(*meta.abi_document)) {
      if (!layout.anonymous && layout.topic == *sel.topic) {
        sel.layout = std::move(layout);
        break;
      }
    }
  }
  return sel;
}

VoterScanResult extract_vote_records(ChainReader& chain,
                                     const Address& governor,
                                     const ScanRange& range) {
  VoterScanResult result;
  result.selection = select_voting_event(chain, governor, range);
  if (!result.selection.topic) return result;

  const auto& layout = result.selection.layout;
  const int voter_idx =
      layout ? layout->find_address_param("voter") : -1;

  KindCache kind(chain, range.end_block);
  for (const EventLogRecord& log :
       chain.fetch_logs(governor, range, result.selection.topic)) {
    VoteRecord base;
    base.governor = governor;
    base.block_number = log.block_number;
    base.tx_index = log.tx_index;
    base.log_index = log.log_index;

    std::optional<DecodedEvent> decoded;
    if (layout) {
      try {
        decoded = decode_event(log, *layout);
      } catch (const AbiError& e) {
        result.decode_failures.push_back(
            "log " + std::to_string(log.block_number) + ":" +
            std::to_string(log.tx_index) + ":" +
            std::to_string(log.log_index) + ": " + e.what());
        continue;
      }
      fill_vote_fields(base, *decoded, *layout);
    }

    if (decoded && voter_idx >= 0) {
      const Address* voter = decoded->values[voter_idx].second.as_address();
      if (!voter) {
        result.decode_failures.push_back(
            "log " + std::to_string(log.block_number) +
            ": voter param did not decode to an address");
        continue;
      }
      base.voter = *voter;
      base.voter_kind = kind(base.voter);
      result.records.push_back(base);
    } else {
      // No "voter"-named entry: fall back to scavenging the data section,
      // one record per address-shaped word.
      for (const Address& addr : scavenge_addresses(log.data)) {
        VoteRecord record = base;
        record.voter = addr;
        record.voter_kind = kind(addr);
        result.records.push_back(record);
      }
    }
  }
  return result;
}

std::set<Address> identify_multisig_voters(ChainReader& chain,
                                           const Address& governor,
                                           const ScanRange& range) {
  std::set<Address> out;
  for (const VoteRecord& r : extract_vote_records(chain, governor, range).records) {
    if (r.voter_kind == AccountKind::Contract) out.insert(r.voter);
  }
  return out;
}

DelegationScan resolve_delegations(ChainReader& chain,
                                   const Address& voting_power,
                                   const ScanRange& range,
                                   const KeywordPolicy& policy) {
  DelegationScan scan;
  const ContractMetadata meta = chain.fetch_contract_metadata(voting_power);
  if (!meta.abi_available || !meta.abi_document) {
    scan.abi_available = false;
    scan.notes.push_back("no verified ABI for " + voting_power.hex());
    return scan;
  }

  std::vector<SignatureEntry> entries;
  for (const CanonicalSignature& sig : meta.abi_events) {
    entries.push_back(
        SignatureEntry::make(sig, SignatureKind::Event, meta.fetched_at));
  }
  const auto delegation_sigs = find_delegation_signatures(entries, policy);
  if (delegation_sigs.empty()) {
    scan.notes.push_back("no delegation events in ABI of " +
                         voting_power.hex());
    return scan;
  }

  std::vector<EventLayout> layouts = layouts_from_abi(*meta.abi_document);
  KindCache kind(chain, range.end_block);

  for (const SignatureEntry& sig : delegation_sigs) {
    const auto layout_it = std::find_if(
        layouts.begin(), layouts.end(), [&](const EventLayout& l) {
          return l.signature == sig.canonical && !l.anonymous;
        });
    if (layout_it == layouts.end()) {
      scan.notes.push_back("skipped anonymous or unmatched event " +
                           sig.canonical.text());
      continue;
    }
    const EventLayout& layout = *layout_it;

    const int delegator_idx = layout.find_address_param("delegator");
    int delegate_idx = layout.find_address_param("todelegate");
    if (delegate_idx < 0) delegate_idx = layout.find_address_param("delegatee");
    if (delegate_idx < 0) {
      for (std::size_t i = 0; i < layout.params.size(); ++i) {
        const std::string n = to_lower(layout.params[i].name);
        if (layout.params[i].type == "address" &&
            n.find("delegate") != std::string::npos &&
            n.find("from") == std::string::npos &&
            n.find("delegator") == std::string::npos) {
          delegate_idx = static_cast<int>(i);
          break;
        }
      }
    }
    if (delegator_idx < 0 || delegate_idx < 0 ||
        delegator_idx == delegate_idx) {
      // E.g. DelegateVotesChanged: a balance event, not a delegation.
      scan.notes.push_back("event " + layout.signature.text() +
                           " lacks a (delegator, delegate) address pair");
      continue;
    }

    for (const EventLogRecord& log :
         chain.fetch_logs(voting_power, range, layout.topic)) {
      DecodedEvent decoded;
      try {
        decoded = decode_event(log, layout);
      } catch (const AbiError& e) {
        scan.notes.push_back("decode failure at log " +
                             std::to_string(log.block_number) + ":" +
                             std::to_string(log.log_index) + ": " + e.what());
        continue;
      }
      const Address* delegator =
          decoded.values[delegator_idx].second.as_address();
      const Address* delegate =
          decoded.values[delegate_idx].second.as_address();
      if (!delegator || !delegate) continue;

      DelegationRecord record;
      record.token = voting_power;
      record.delegator = *delegator;
      record.delegate = *delegate;
      record.self_delegation = record.delegator == record.delegate;
      record.delegator_kind = kind(record.delegator);
      record.delegate_kind = kind(record.delegate);
      record.block_number = log.block_number;
      record.tx_index = log.tx_index;
      record.log_index = log.log_index;
      if (record.delegator_kind == AccountKind::Contract ||
          record.delegate_kind == AccountKind::Contract) {
        scan.records.push_back(record);
      }
    }
  }

  std::sort(scan.records.begin(), scan.records.end(),
            [](const DelegationRecord& a, const DelegationRecord& b) {
              return std::tie(a.block_number, a.tx_index, a.log_index) <
                     std::tie(b.block_number, b.tx_index, b.log_index);
            });
  return scan;
}

}  // namespace metagov

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/govscan.hpp"

#include <algorithm>

namespace metagov {

namespace {

std::vector<SignatureEntry> entries_from_metadata(
    const ContractMetadata& meta) {
  std::vector<SignatureEntry> entries;
  for (const CanonicalSignature& sig : meta.abi_events) {
    entries.push_back(
        SignatureEntry::make(sig, SignatureKind::Event, meta.fetched_at));
  }
  for (const CanonicalSignature& sig : meta.abi_functions) {
    entries.push_back(
        SignatureEntry::make(sig, SignatureKind::Function, meta.fetched_at));
  }
  return entries;
}

bool has_signatures(const ContractMetadata& meta) {
  return meta.abi_available &&
         (!meta.abi_events.empty() || !meta.abi_functions.empty());
}

// Most frequent delegatecall target of `proxy`, if any.
std::optional<Address> implementation_of(ChainReader& chain,
                                         const Address& proxy,
                                         const ScanRange& range) {
  std::map<Address, std::uint64_t> counts;
  for (const TraceRecord& t : chain.delegatecalls_from(proxy, range)) {
    ++counts[t.to];
  }
  std::optional<Address> best;
  std::uint64_t best_count = 0;
  for (const auto& [addr, count] : counts) {
    if (count > best_count) {  // map order makes ties resolve to lowest addr
      best = addr;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

GovernanceDetection identify_governance_contract(ChainReader& chain,
                                                 const Address& input,
                                                 const ScanRange& range,
                                                 const KeywordPolicy& policy) {
  GovernanceDetection detection;
  detection.input = input;
  detection.range = range;

  // Iteration over std::map is address-ordered, which makes the whole
  // evidence trail deterministic.
  for (const auto& [invocator, count] :
       chain.contract_invocators(input, range)) {
    if (invocator == input) {
      detection.rejected.push_back(
          {invocator, count, "input contract itself (self-calls)"});
      continue;
    }
    if (chain.account_kind(invocator, range.end_block) !=
        AccountKind::Contract) {
      detection.rejected.push_back(
          {invocator, count, "not a contract account"});
      continue;
    }

    ContractMetadata meta = chain.fetch_contract_metadata(invocator);
    std::optional<Address> classified_via;
    if (!has_signatures(meta)) {
      // Proxy pattern: no usable ABI of its own, but it may delegatecall
      // into a verified implementation.
      if (const auto impl = implementation_of(chain, invocator, range)) {
        ContractMetadata impl_meta = chain.fetch_contract_metadata(*impl);
        if (has_signatures(impl_meta)) {
          meta = std::move(impl_meta);
          classified_via = impl;
        }
      }
    }
    if (!has_signatures(meta)) {
      detection.rejected.push_back({invocator, count, "no verified ABI"});
      continue;
    }

    const auto entries = entries_from_metadata(meta);
    std::vector<std::string> matched;
    for (const SignatureEntry& e : entries) {
      for (const std::string& kw :
           matched_keywords(e.canonical.name, policy.governance_keywords)) {
        if (std::find(matched.begin(), matched.end(), kw) == matched.end()) {
          matched.push_back(kw);
        }
      }
    }
    if (matched.empty()) {
      detection.rejected.push_back(
          {invocator, count, "no governance keywords in ABI signatures"});
      continue;
    }

    GovernanceCandidate candidate;
    candidate.address = invocator;
    candidate.invocation_count = count;
    candidate.matched_keywords = std::move(matched);
    candidate.classified_via = classified_via;
    detection.candidates.push_back(std::move(candidate));
  }

  std::sort(detection.candidates.begin(), detection.candidates.end(),
            [](const GovernanceCandidate& a, const GovernanceCandidate& b) {
              if (a.invocation_count != b.invocation_count) {
                return a.invocation_count > b.invocation_count;
              }
              return a.address < b.address;
            });

  if (!detection.candidates.empty()) {
    detection.chosen = detection.candidates.front().address;
    detection.tie_broken =
        detection.candidates.size() > 1 &&
        detection.candidates[1].invocation_count ==
            detection.candidates[0].invocation_count;
  }
  return detection;
}

nlohmann::json GovernanceDetection::to_json() const {
  nlohmann::json j;
  j["input"] = input.hex();
  j["range"] = {{"startBlock", range.start_block},
                {"endBlock", range.end_block}};
  j["candidates"] = nlohmann::json::array();
  for (const GovernanceCandidate& c : candidates) {
    nlohmann::json cj{{"address", c.address.hex()},
                      {"invocationCount", c.invocation_count},
                      {"matchedKeywords", c.matched_keywords}};
    if (c.classified_via) cj["classifiedVia"] = c.classified_via->hex();
    j["candidates"].push_back(std::move(cj));
  }
  j["chosen"] = chosen ? nlohmann::json(chosen->hex()) : nlohmann::json();
  j["rejected"] = nlohmann::json::array();
  for (const RejectedInvocator& r : rejected) {
    j["rejected"].push_back({{"address", r.address.hex()},
                             {"invocationCount", r.invocation_count},
                             {"reason", r.reason}});
  }
  j["tieBroken"] = tie_broken;
  return j;
}

GovernanceDetection GovernanceDetection::from_json(const nlohmann::json& j) {
  GovernanceDetection d;
  d.input = Address::parse(j.at("input").get<std::string>());
  d.range = ScanRange(j.at("range").at("startBlock").get<std::uint64_t>(),
                      j.at("range").at("endBlock").get<std::uint64_t>());
  for (const auto& cj : j.at("candidates")) {
    GovernanceCandidate c;
    c.address = Address::parse(cj.at("address").get<std::string>());
    c.invocation_count = cj.at("invocationCount").get<std::uint64_t>();
    c.matched_keywords =
        cj.value("matchedKeywords", std::vector<std::string>{});
    if (cj.contains("classifiedVia")) {
      c.classified_via =
          Address::parse(cj.at("classifiedVia").get<std::string>());
    }
    d.candidates.push_back(std::move(c));
  }
  if (!j.at("chosen").is_null()) {
    d.chosen = Address::parse(j.at("chosen").get<std::string>());
  }
  for (const auto& rj : j.value("rejected", nlohmann::json::array())) {
    d.rejected.push_back(
        {Address::parse(rj.at("address").get<std::string>()),
         rj.at("invocationCount").get<std::uint64_t>(),
         rj.at("reason").get<std::string>()});
  }
  d.tie_broken = j.value("tieBroken", false);
  return d;
}

}  // namespace metagov

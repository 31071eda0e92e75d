// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/snapshotio.hpp"

#include <algorithm>
#include <fstream>

#include "metagov/errors.hpp"

namespace metagov {

std::string OffchainVote::id() const {
  return "off:" + space_id + ":" + proposal_id + ":" + voter.hex();
}

std::vector<Address> extract_strategy_addresses(const nlohmann::json& params) {
  std::vector<Address> out;
  if (params.is_string()) {
    try {
      out.push_back(Address::parse(params.get<std::string>()));
    } catch (const ParseError&) {
      // not an address-shaped string
    }
    return out;
  }
  if (params.is_object() || params.is_array()) {
    for (const auto& child : params) {
      for (const Address& a : extract_strategy_addresses(child)) {
        out.push_back(a);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON forms

void to_json(nlohmann::json& j, const SpaceRecord& r) {
  nlohmann::json strategies = nlohmann::json::array();
  for (const SpaceStrategy& s : r.strategies) {
    std::vector<std::string> addrs;
    for (const Address& a : s.referenced_addresses) addrs.push_back(a.hex());
    strategies.push_back({{"name", s.name}, {"addresses", addrs}});
  }
  j = nlohmann::json{{"id", r.space_id},
                     {"followers", r.follower_count},
                     {"strategies", strategies}};
}

void from_json(const nlohmann::json& j, SpaceRecord& r) {
  r.space_id = j.at("id").get<std::string>();
  r.follower_count = j.value("followers", std::uint64_t{0});
  r.strategies.clear();
  for (const auto& sj : j.value("strategies", nlohmann::json::array())) {
    SpaceStrategy s;
    s.name = sj.value("name", "");
    if (sj.contains("addresses")) {
      for (const auto& a : sj.at("addresses")) {
        s.referenced_addresses.push_back(
            Address::parse(a.get<std::string>()));
      }
    } else if (sj.contains("params")) {
      // Raw strategy document: walk it for anything address-shaped.
      s.referenced_addresses = extract_strategy_addresses(sj.at("params"));
    }
    r.strategies.push_back(std::move(s));
  }
}

void to_json(nlohmann::json& j, const OffchainVote& r) {
  j = nlohmann::json{{"space", r.space_id},
                     {"proposal", r.proposal_id},
                     {"voter", r.voter.hex()},
                     {"choice", r.choice},
                     {"vp", r.voting_power},
                     {"created", r.timestamp}};
}

void from_json(const nlohmann::json& j, OffchainVote& r) {
  r.space_id = j.at("space").get<std::string>();
  r.proposal_id = j.at("proposal").get<std::string>();
  r.voter = Address::parse(j.at("voter").get<std::string>());
  r.choice = j.value("choice", nlohmann::json());
  r.voting_power = j.value("vp", 0.0);
  r.timestamp = j.value("created", std::int64_t{0});
}

void to_json(nlohmann::json& j, const ProposalText& r) {
  j = nlohmann::json{{"space", r.space_id},
                     {"id", r.proposal_id},
                     {"title", r.title},
                     {"body", r.body}};
}

void from_json(const nlohmann::json& j, ProposalText& r) {
  r.space_id = j.at("space").get<std::string>();
  r.proposal_id = j.at("id").get<std::string>();
  r.title = j.value("title", "");
  r.body = j.value("body", "");
}

// ---------------------------------------------------------------------------
// FixtureSnapshotSource

namespace {

template <typename T>
std::vector<T> load_rows(const std::filesystem::path& file,
                         std::vector<std::string>& skipped) {
  std::vector<T> out;
  std::ifstream in(file);
  if (!in) return out;  // absent file reads as empty
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<T>());
    } catch (const std::exception& e) {
      skipped.push_back(file.filename().string() + ":" +
                        std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<SpaceRecord> FixtureSnapshotSource::fetch_spaces() {
  return load_rows<SpaceRecord>(dir_ / "spaces.jsonl", skipped_);
}

std::vector<OffchainVote> FixtureSnapshotSource::fetch_votes(
    const std::string& space_id) {
  std::vector<OffchainVote> all =
      load_rows<OffchainVote>(dir_ / "votes.jsonl", skipped_);
  std::erase_if(all, [&](const OffchainVote& v) {
    return v.space_id != space_id;
  });
  return all;
}

std::vector<ProposalText> FixtureSnapshotSource::fetch_proposals(
    const std::string& space_id) {
  std::vector<ProposalText> all =
      load_rows<ProposalText>(dir_ / "proposals.jsonl", skipped_);
  std::erase_if(all, [&](const ProposalText& p) {
    return p.space_id != space_id;
  });
  return all;
}

// ---------------------------------------------------------------------------
// SpaceIndex

void SpaceIndex::add(SpaceRecord space) {
  const std::string id = space.space_id;
  std::vector<Address> referenced;
  for (const SpaceStrategy& s : space.strategies) {
    referenced.insert(referenced.end(), s.referenced_addresses.begin(),
                      s.referenced_addresses.end());
  }
  spaces_[id] = std::move(space);
  std::sort(referenced.begin(), referenced.end());
  referenced.erase(std::unique(referenced.begin(), referenced.end()),
                   referenced.end());
  for (const Address& a : referenced) {
    auto& ids = by_address_[a];
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      ids.push_back(id);
    }
  }
}

const SpaceRecord* SpaceIndex::space_by_id(const std::string& space_id) const {
  const auto it = spaces_.find(space_id);
  return it == spaces_.end() ? nullptr : &it->second;
}

std::vector<const SpaceRecord*> SpaceIndex::lookup(const Address& addr) const {
  std::vector<const SpaceRecord*> out;
  const auto it = by_address_.find(addr);
  if (it == by_address_.end()) return out;
  for (const std::string& id : it->second) {
    const auto sp = spaces_.find(id);
    if (sp != spaces_.end()) out.push_back(&sp->second);
  }
  return out;
}

std::optional<SpaceRecord> SpaceIndex::resolve_space(
    const Address& voting_power, std::uint64_t min_followers) const {
  const SpaceRecord* best = nullptr;
  for (const SpaceRecord* space : lookup(voting_power)) {
    if (space->follower_count < min_followers) continue;
    if (!best || space->follower_count > best->follower_count ||
        (space->follower_count == best->follower_count &&
         space->space_id < best->space_id)) {
      best = space;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

SpaceIndex build_space_index(SnapshotSource& source) {
  SpaceIndex index;
  for (SpaceRecord& space : source.fetch_spaces()) {
    index.add(std::move(space));
  }
  return index;
}

std::vector<OffchainVote> fetch_offchain_votes(SnapshotSource& source,
                                               const std::string& space_id,
                                               ChainReader& chain,
                                               std::uint64_t at_block) {
  // Last write wins per (proposal, voter).
  std::map<std::pair<std::string, std::string>, OffchainVote> dedup;
  for (OffchainVote& vote : source.fetch_votes(space_id)) {
    auto key = std::make_pair(vote.proposal_id, vote.voter.hex());
    dedup.insert_or_assign(std::move(key), std::move(vote));
  }
  std::vector<OffchainVote> out;
  out.reserve(dedup.size());
  std::map<Address, AccountKind> kinds;
  for (auto& [key, vote] : dedup) {
    auto it = kinds.find(vote.voter);
    if (it == kinds.end()) {
      it = kinds.emplace(vote.voter, chain.account_kind(vote.voter, at_block))
               .first;
    }
    vote.voter_kind = it->second;
    out.push_back(std::move(vote));
  }
  std::sort(out.begin(), out.end(),
            [](const OffchainVote& a, const OffchainVote& b) {
              return std::tie(a.timestamp, a.proposal_id, a.voter) <
                     std::tie(b.timestamp, b.proposal_id, b.voter);
            });
  return out;
}

}  // namespace metagov

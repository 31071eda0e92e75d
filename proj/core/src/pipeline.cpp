// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/pipeline.hpp"

#include <cctype>
#include <fstream>

#include "metagov/errors.hpp"
#include "metagov/hex.hpp"
#include "metagov/keccak.hpp"

namespace metagov {

Pipeline::Pipeline(ChainReader& chain, SnapshotSource* snapshot,
                   LabelStore& labels, PipelineConfig config)
    : chain_(chain),
      snapshot_(snapshot),
      labels_(labels),
      config_(std::move(config)) {}

const SpaceIndex& Pipeline::space_index() {
  if (!index_) {
    index_.emplace();
    if (snapshot_) {
      *index_ = build_space_index(*snapshot_);
    }
  }
  return *index_;
}

DaoScanResult Pipeline::scan_dao(const DaoIdentity& dao) {
  DaoScanResult result;
  result.dao = dao;

  // 1. Governance contract, unless the identity already pins one.
  if (!result.dao.governor_address && result.dao.voting_power_address) {
    result.detection = identify_governance_contract(
        chain_, *result.dao.voting_power_address, config_.range,
        config_.policy);
    if (result.detection->chosen) {
      result.dao.governor_address = result.detection->chosen;
    } else {
      result.notes.push_back("no governance contract identified for " +
                             result.dao.voting_power_address->hex());
    }
  }

  // 2. On-chain votes through the governor.
  if (result.dao.governor_address) {
    result.votes =
        extract_vote_records(chain_, *result.dao.governor_address,
                             config_.range);
    if (!result.votes.selection.topic) {
      result.notes.push_back("governor emitted no logs in range");
    }
  }

  // 3. Off-chain space and votes.
  if (result.dao.snapshot_space) {
    // Space pinned by the seed row; resolve the record if indexed.
    if (const SpaceRecord* known =
            space_index().space_by_id(*result.dao.snapshot_space)) {
      result.space = *known;
    }
  } else if (result.dao.voting_power_address) {
    result.space = space_index().resolve_space(
        *result.dao.voting_power_address, config_.min_followers);
    if (result.space) {
      result.dao.snapshot_space = result.space->space_id;
    }
  }
  if (result.dao.snapshot_space && snapshot_) {
    result.offchain_votes =
        fetch_offchain_votes(*snapshot_, *result.dao.snapshot_space, chain_,
                             config_.range.end_block);
  } else if (!result.dao.snapshot_space) {
    result.notes.push_back("no qualifying snapshot space");
  }

  // 4. Delegations on the voting-power contract.
  if (result.dao.voting_power_address) {
    result.delegations = resolve_delegations(
        chain_, *result.dao.voting_power_address, config_.range,
        config_.policy);
    if (!result.delegations.abi_available) {
      result.notes.push_back("voting-power contract has no verified ABI");
    }
  }

  return result;
}

// ---------------------------------------------------------------------------
// Seed list

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::vector<DaoIdentity> load_seed_csv(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw SourceUnavailableError("cannot open seed list " + csv.string());

  std::vector<DaoIdentity> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.emplace_back(trim(std::string_view(line).substr(start, i - start)));
        start = i + 1;
      }
    }
    if (fields.size() < 3) {
      throw ParseError(csv.string() + ":" + std::to_string(line_no) +
                       ": expected dao-id,display-name,voting-power-address"
                       "[,snapshot-space]");
    }
    // Tolerate a header row.
    if (line_no == 1 && fields[0] == "dao-id") continue;

    DaoIdentity dao;
    dao.id = fields[0];
    dao.display_name = fields[1];
    dao.source = DaoSource::SeedList;
    if (!fields[2].empty()) {
      dao.voting_power_address = Address::parse(fields[2]);
    }
    if (fields.size() >= 4 && !fields[3].empty()) {
      dao.snapshot_space = fields[3];
    }
    if (dao.id.empty()) {
      throw ParseError(csv.string() + ":" + std::to_string(line_no) +
                       ": empty dao-id");
    }
    if (!dao.voting_power_address && !dao.snapshot_space) {
      throw ParseError(csv.string() + ":" + std::to_string(line_no) +
                       ": seed row needs an address or a space");
    }
    seeds.push_back(std::move(dao));
  }
  return seeds;
}

std::string seed_list_hash(const std::vector<DaoIdentity>& seeds) {
  std::string material;
  for (const DaoIdentity& dao : seeds) {
    material += dao.id;
    material.push_back(',');
    if (dao.voting_power_address) material += dao.voting_power_address->hex();
    material.push_back(',');
    if (dao.snapshot_space) material += *dao.snapshot_space;
    material.push_back('\n');
  }
  const auto digest = crypto::keccak256(material);
  return hex::encode(std::span<const std::uint8_t>(digest.data(), 8));
}

}  // namespace metagov

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/metanet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

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

// "block:123" / "time:456" -> numeric part for first-seen comparisons.
std::uint64_t first_seen_value(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return 0;
  std::uint64_t v = 0;
  std::from_chars(s.data() + colon + 1, s.data() + s.size(), v);
  return v;
}

// Display name for an inferred vertex: the tag prefix in its original
// case, or the address when unlabelled.
std::string display_from_label(const LabelRecord& record) {
  if (record.tag && !record.tag->empty()) {
    std::string_view prefix = *record.tag;
    const auto colon = prefix.find(':');
    if (colon != std::string_view::npos) prefix = prefix.substr(0, colon);
    while (!prefix.empty() &&
           std::isspace(static_cast<unsigned char>(prefix.back()))) {
      prefix.remove_suffix(1);
    }
    return std::string(prefix);
  }
  return record.address.hex();
}

// Vertex for a voter DAO discovered through labels. A token-tagged label
// supplies a voting-power address, which is what makes the DAO scannable
// during expansion; everything else is a leaf. Unlabelled voters are
// singleton vertices whose id is the address itself.
DaoIdentity inferred_vertex(const LabelRecord& record, const std::string& id,
                            const LabelStore& labels) {
  DaoIdentity dao;
  dao.id = id;
  dao.display_name = display_from_label(record);
  dao.source = DaoSource::LabelInference;
  dao.voting_power_address = labels.voting_power_hint(id);
  return dao;
}

}  // namespace

std::string_view edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::OnChainVote:
      return "onchain-vote";
    case EdgeKind::OffChainVote:
      return "offchain-vote";
    case EdgeKind::Delegation:
      return "delegation";
  }
  return "onchain-vote";
}

EdgeKind edge_kind_from_name(std::string_view name) {
  if (name == "onchain-vote") return EdgeKind::OnChainVote;
  if (name == "offchain-vote") return EdgeKind::OffChainVote;
  if (name == "delegation") return EdgeKind::Delegation;
  throw ParseError("unknown edge kind: " + std::string(name));
}

// ---------------------------------------------------------------------------
// MetagovNetwork

void MetagovNetwork::upsert_vertex(const DaoIdentity& dao) {
  auto it = vertices_.find(dao.id);
  if (it == vertices_.end()) {
    vertices_.emplace(dao.id, dao);
    return;
  }
  DaoIdentity& existing = it->second;
  if (existing.display_name.empty()) existing.display_name = dao.display_name;
  if (!existing.voting_power_address) {
    existing.voting_power_address = dao.voting_power_address;
  }
  if (!existing.governor_address) {
    existing.governor_address = dao.governor_address;
  }
  if (!existing.snapshot_space) existing.snapshot_space = dao.snapshot_space;
}

const DaoIdentity* MetagovNetwork::vertex(const std::string& id) const {
  const auto it = vertices_.find(id);
  return it == vertices_.end() ? nullptr : &it->second;
}

void MetagovNetwork::set_source(const std::string& id, DaoSource source) {
  const auto it = vertices_.find(id);
  if (it != vertices_.end()) it->second.source = source;
}

bool MetagovNetwork::add_edge(const std::string& source,
                              const std::string& target, EdgeKind kind,
                              std::vector<std::string> evidence,
                              const std::string& first_seen) {
  if (source == target) {
    throw Error("self-loop edge rejected: " + source);
  }
  if (!vertices_.contains(source) || !vertices_.contains(target)) {
    throw Error("edge endpoint missing from network: " + source + " -> " +
                target);
  }
  if (evidence.empty()) {
    throw Error("edge without evidence rejected: " + source + " -> " + target);
  }
  const EdgeKey key{source, target, kind};
  auto it = edges_.find(key);
  if (it == edges_.end()) {
    MetagovEdge edge;
    edge.source_dao = source;
    edge.target_dao = target;
    edge.kind = kind;
    std::sort(evidence.begin(), evidence.end());
    evidence.erase(std::unique(evidence.begin(), evidence.end()),
                   evidence.end());
    edge.evidence = std::move(evidence);
    edge.first_seen = first_seen;
    edges_.emplace(key, std::move(edge));
    return true;
  }
  MetagovEdge& edge = it->second;
  edge.evidence.insert(edge.evidence.end(), evidence.begin(), evidence.end());
  std::sort(edge.evidence.begin(), edge.evidence.end());
  edge.evidence.erase(
      std::unique(edge.evidence.begin(), edge.evidence.end()),
      edge.evidence.end());
  if (first_seen_value(first_seen) < first_seen_value(edge.first_seen)) {
    edge.first_seen = first_seen;
  }
  return false;
}

const MetagovEdge* MetagovNetwork::edge(const std::string& source,
                                        const std::string& target,
                                        EdgeKind kind) const {
  const auto it = edges_.find(EdgeKey{source, target, kind});
  return it == edges_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Construction

void merge_scan(MetagovNetwork& net, const DaoScanResult& scan,
                const LabelStore& labels) {
  net.upsert_vertex(scan.dao);

  // On-chain contract voters -> OnChainVote edges.
  for (const VoteRecord& vote : scan.votes.records) {
    if (vote.voter_kind != AccountKind::Contract) continue;
    const LabelRecord record = labels.label(vote.voter);
    const std::string group = dao_group_key(record);
    if (group == scan.dao.id) continue;  // a DAO's own treasury voting home
    net.upsert_vertex(inferred_vertex(record, group, labels));
    net.add_edge(group, scan.dao.id, EdgeKind::OnChainVote, {vote.id()},
                 "block:" + std::to_string(vote.block_number));
  }

  // Off-chain contract voters -> OffChainVote edges.
  for (const OffchainVote& vote : scan.offchain_votes) {
    if (vote.voter_kind != AccountKind::Contract) continue;
    const LabelRecord record = labels.label(vote.voter);
    const std::string group = dao_group_key(record);
    if (group == scan.dao.id) continue;
    net.upsert_vertex(inferred_vertex(record, group, labels));
    net.add_edge(group, scan.dao.id, EdgeKind::OffChainVote, {vote.id()},
                 "time:" + std::to_string(vote.timestamp));
  }
}

MetagovNetwork build_network(const std::vector<DaoScanResult>& scans,
                             const LabelStore& labels,
                             const NetworkProvenance& provenance) {
  MetagovNetwork net;
  net.provenance = provenance;
  for (const DaoScanResult& scan : scans) {
    merge_scan(net, scan, labels);
  }
  return net;
}

ExpandStats expand(
    MetagovNetwork& net,
    const std::function<DaoScanResult(const DaoIdentity&)>& scan_dao,
    int depth_limit, const LabelStore& labels,
    std::set<std::string>& scanned_ids) {
  ExpandStats stats;
  for (int round = 0; round < depth_limit; ++round) {
    // Frontier: discovered, unscanned, and actually scannable.
    std::vector<DaoIdentity> frontier;
    for (const auto& [id, dao] : net.vertices()) {
      if (scanned_ids.contains(id)) continue;
      if (!dao.voting_power_address && !dao.snapshot_space) continue;
      frontier.push_back(dao);
    }
    if (frontier.empty()) break;
    ++stats.rounds_run;

    for (DaoIdentity& dao : frontier) {
      scanned_ids.insert(dao.id);
      stats.scanned.push_back(dao.id);
      if (dao.source == DaoSource::LabelInference) {
        dao.source = DaoSource::Expansion;
        net.set_source(dao.id, DaoSource::Expansion);
      }
      try {
        const DaoScanResult result = scan_dao(dao);
        merge_scan(net, result, labels);
      } catch (const ReplayMissError&) {
        throw;  // hermeticity violations always fail the whole run
      } catch (const Error& e) {
        stats.errors.push_back(dao.id + ": " + e.what());
      }
    }
  }
  net.provenance.expansion_depth += stats.rounds_run;
  return stats;
}

// ---------------------------------------------------------------------------
// Delegation folding

std::map<Address, std::uint64_t> collect_votes_by_voter(
    const std::vector<DaoScanResult>& scans) {
  std::map<Address, std::uint64_t> counts;
  for (const DaoScanResult& scan : scans) {
    for (const VoteRecord& v : scan.votes.records) ++counts[v.voter];
    for (const OffchainVote& v : scan.offchain_votes) ++counts[v.voter];
  }
  return counts;
}

DelegationFunnel fold_delegations(
    MetagovNetwork& net, std::span<const DelegationRecord> delegations,
    const std::map<Address, std::uint64_t>& votes_by_delegate,
    const LabelStore& labels) {
  DelegationFunnel funnel;
  funnel.total = delegations.size();

  // Token address -> target DAO, from what the network already knows.
  std::map<Address, std::string> token_dao;
  for (const auto& [id, dao] : net.vertices()) {
    if (dao.voting_power_address) {
      token_dao.emplace(*dao.voting_power_address, id);
    }
  }

  // (source dao, delegate, target dao) -> supporting record ids.
  struct Triple {
    std::vector<std::string> evidence;
    Address delegate;
    std::uint64_t first_block = 0;
    LabelRecord source_label;
  };
  std::map<std::tuple<std::string, Address, std::string>, Triple> triples;

  for (const DelegationRecord& rec : delegations) {
    if (rec.self_delegation) {
      ++funnel.self_delegations;
      continue;
    }
    // Only contract delegators can represent a DAO delegating.
    if (rec.delegator_kind != AccountKind::Contract) continue;
    const auto target_it = token_dao.find(rec.token);
    if (target_it == token_dao.end()) continue;
    const LabelRecord label = labels.label(rec.delegator);
    const std::string source = dao_group_key(label);
    if (source == target_it->second) continue;  // intra-DAO delegation

    auto& triple = triples[{source, rec.delegate, target_it->second}];
    triple.evidence.push_back(rec.id());
    triple.delegate = rec.delegate;
    triple.source_label = label;
    if (triple.first_block == 0 || rec.block_number < triple.first_block) {
      triple.first_block = rec.block_number;
    }
  }
  funnel.distinct_dao_to_dao = triples.size();

  for (const auto& [key, triple] : triples) {
    const auto votes = votes_by_delegate.find(triple.delegate);
    if (votes == votes_by_delegate.end() || votes->second == 0) continue;
    ++funnel.active_delegates;

    const auto& [source, delegate, target] = key;
    net.upsert_vertex(inferred_vertex(triple.source_label, source, labels));
    if (net.add_edge(source, target, EdgeKind::Delegation, triple.evidence,
                     "block:" + std::to_string(triple.first_block))) {
      ++funnel.new_edges;
    }
  }

  net.funnel = funnel;
  return funnel;
}

// ---------------------------------------------------------------------------
// Reports

std::vector<DegreeEntry> degree_report(const MetagovNetwork& net) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [key, edge] : net.edges()) {
    pairs.emplace(edge.source_dao, edge.target_dao);
  }
  std::map<std::string, DegreeEntry> by_dao;
  for (const auto& [id, dao] : net.vertices()) {
    by_dao[id].dao_id = id;
  }
  for (const auto& [source, target] : pairs) {
    ++by_dao[source].out_degree;
    ++by_dao[target].in_degree;
  }
  std::vector<DegreeEntry> out;
  out.reserve(by_dao.size());
  for (const auto& [id, entry] : by_dao) out.push_back(entry);
  std::sort(out.begin(), out.end(), [](const DegreeEntry& a,
                                       const DegreeEntry& b) {
    if (a.in_degree != b.in_degree) return a.in_degree > b.in_degree;
    return a.dao_id < b.dao_id;
  });
  return out;
}

ShareReportResult share_report(std::span<const VoteRecord> votes,
                               double threshold) {
  ShareReportResult result;

  std::map<std::string, U256> totals;
  for (const VoteRecord& v : votes) {
    if (!v.proposal_id) {
      result.skipped.push_back(v.id() + ": no proposal id");
      continue;
    }
    if (!v.weight) {
      result.skipped.push_back(v.id() + ": no weight");
      continue;
    }
    totals[u256_to_string(*v.proposal_id)] += *v.weight;
  }

  for (const VoteRecord& v : votes) {
    if (!v.proposal_id || !v.weight) continue;
    const std::string proposal = u256_to_string(*v.proposal_id);
    const U256& total = totals[proposal];
    if (total == 0) {
      result.skipped.push_back(v.id() + ": proposal has zero total weight");
      continue;
    }
    ShareEntry entry;
    entry.proposal_id = proposal;
    entry.voter = v.voter;
    entry.voter_weight = *v.weight;
    entry.total_weight = total;
    entry.share = v.weight->convert_to<double>() / total.convert_to<double>();
    entry.flagged = entry.share > threshold;
    result.entries.push_back(std::move(entry));
  }

  std::sort(result.entries.begin(), result.entries.end(),
            [](const ShareEntry& a, const ShareEntry& b) {
              return std::tie(a.proposal_id, a.voter) <
                     std::tie(b.proposal_id, b.voter);
            });
  return result;
}

bool ThresholdRule::passes(const U256& for_total,
                           const U256& against_total) const {
  if (for_total <= against_total) return false;  // ties fail
  if (kind == Kind::Quorum && for_total < quorum) return false;
  return true;
}

DecisiveReport decisive_report(std::span<const VoteRecord> proposal_votes,
                               const ThresholdRule& rule) {
  DecisiveReport report;

  // Aggregate per voter per side; a voter may appear in several logs.
  struct Tally {
    U256 weight;
    AccountKind kind = AccountKind::ExternallyOwned;
  };
  std::map<std::pair<Address, std::uint8_t>, Tally> by_voter_side;

  for (const VoteRecord& v : proposal_votes) {
    if (report.proposal_id.empty() && v.proposal_id) {
      report.proposal_id = u256_to_string(*v.proposal_id);
    }
    if (!v.support || !v.weight) continue;
    if (*v.support == 1) {
      report.for_total += *v.weight;
    } else if (*v.support == 0) {
      report.against_total += *v.weight;
    } else {
      continue;  // abstain and friends stay out of both totals
    }
    auto& tally = by_voter_side[{v.voter, *v.support}];
    tally.weight += *v.weight;
    tally.kind = v.voter_kind;
  }

  report.passed = rule.passes(report.for_total, report.against_total);

  for (const auto& [key, tally] : by_voter_side) {
    if (tally.kind != AccountKind::Contract) continue;
    const auto& [voter, side] = key;
    U256 for_without = report.for_total;
    U256 against_without = report.against_total;
    (side == 1 ? for_without : against_without) -= tally.weight;
    if (rule.passes(for_without, against_without) != report.passed) {
      report.flipped.push_back({voter, tally.weight, side});
    }
  }

  for (const FlippedVoter& f : report.flipped) {
    if (!report.pivotal_voter || f.weight > report.pivotal_weight) {
      report.pivotal_voter = f.voter;
      report.pivotal_weight = f.weight;
    }
  }
  return report;
}

bool mentions_whole_word(std::string_view text, std::string_view name) {
  if (name.empty()) return false;
  const std::string ltext = to_lower(text);
  const std::string lname = to_lower(name);
  std::size_t pos = 0;
  const auto is_word = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  };
  while ((pos = ltext.find(lname, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !is_word(ltext[pos - 1]);
    const std::size_t end = pos + lname.size();
    const bool right_ok = end == ltext.size() || !is_word(ltext[end]);
    if (left_ok && right_ok) return true;
    pos += 1;
  }
  return false;
}

std::vector<MentionEntry> mention_report(
    const std::string& source_dao, std::span<const ProposalText> proposals,
    const std::vector<std::pair<std::string, std::string>>& targets,
    const MetagovNetwork& net) {
  std::vector<MentionEntry> out;
  for (const auto& [target_id, target_name] : targets) {
    if (target_id == source_dao) continue;
    MentionEntry entry;
    entry.source_dao = source_dao;
    entry.target_dao = target_id;
    for (const ProposalText& p : proposals) {
      if (mentions_whole_word(p.title, target_name) ||
          mentions_whole_word(p.body, target_name)) {
        ++entry.mention_count;
      }
    }
    for (const EdgeKind kind :
         {EdgeKind::OnChainVote, EdgeKind::OffChainVote}) {
      if (const MetagovEdge* e = net.edge(source_dao, target_id, kind)) {
        entry.vote_count += e->evidence.size();
      }
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const MentionEntry& a, const MentionEntry& b) {
              if (a.mention_count != b.mention_count) {
                return a.mention_count > b.mention_count;
              }
              return a.target_dao < b.target_dao;
            });
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

void to_json(nlohmann::json& j, const DaoIdentity& dao) {
  j = nlohmann::json{{"id", dao.id},
                     {"displayName", dao.display_name},
                     {"source", std::string(dao_source_name(dao.source))}};
  if (dao.voting_power_address) {
    j["votingPowerAddress"] = dao.voting_power_address->hex();
  }
  if (dao.governor_address) j["governorAddress"] = dao.governor_address->hex();
  if (dao.snapshot_space) j["snapshotSpace"] = *dao.snapshot_space;
}

void from_json(const nlohmann::json& j, DaoIdentity& dao) {
  dao.id = j.at("id").get<std::string>();
  dao.display_name = j.value("displayName", "");
  dao.source = dao_source_from_name(j.value("source", "seed"));
  dao.voting_power_address.reset();
  dao.governor_address.reset();
  dao.snapshot_space.reset();
  if (j.contains("votingPowerAddress")) {
    dao.voting_power_address =
        Address::parse(j.at("votingPowerAddress").get<std::string>());
  }
  if (j.contains("governorAddress")) {
    dao.governor_address =
        Address::parse(j.at("governorAddress").get<std::string>());
  }
  if (j.contains("snapshotSpace")) {
    dao.snapshot_space = j.at("snapshotSpace").get<std::string>();
  }
}

void to_json(nlohmann::json& j, const VoteRecord& r) {
  j = nlohmann::json{{"governor", r.governor.hex()},
                     {"voter", r.voter.hex()},
                     {"voterKind", r.voter_kind == AccountKind::Contract
                                       ? "contract"
                                       : "eoa"},
                     {"blockNumber", r.block_number},
                     {"txIndex", r.tx_index},
                     {"logIndex", r.log_index}};
  if (r.proposal_id) j["proposalId"] = u256_to_string(*r.proposal_id);
  if (r.support) j["support"] = *r.support;
  if (r.weight) j["weight"] = u256_to_string(*r.weight);
}

void from_json(const nlohmann::json& j, VoteRecord& r) {
  r.governor = Address::parse(j.at("governor").get<std::string>());
  r.voter = Address::parse(j.at("voter").get<std::string>());
  r.voter_kind = j.value("voterKind", "eoa") == std::string("contract")
                     ? AccountKind::Contract
                     : AccountKind::ExternallyOwned;
  r.block_number = j.at("blockNumber").get<std::uint64_t>();
  r.tx_index = j.at("txIndex").get<std::uint32_t>();
  r.log_index = j.at("logIndex").get<std::uint32_t>();
  r.proposal_id.reset();
  r.support.reset();
  r.weight.reset();
  if (j.contains("proposalId")) {
    r.proposal_id = u256_from_string(j.at("proposalId").get<std::string>());
  }
  if (j.contains("support")) r.support = j.at("support").get<std::uint8_t>();
  if (j.contains("weight")) {
    r.weight = u256_from_string(j.at("weight").get<std::string>());
  }
}

void to_json(nlohmann::json& j, const DelegationRecord& r) {
  j = nlohmann::json{
      {"token", r.token.hex()},
      {"delegator", r.delegator.hex()},
      {"delegate", r.delegate.hex()},
      {"selfDelegation", r.self_delegation},
      {"delegatorKind",
       r.delegator_kind == AccountKind::Contract ? "contract" : "eoa"},
      {"delegateKind",
       r.delegate_kind == AccountKind::Contract ? "contract" : "eoa"},
      {"blockNumber", r.block_number},
      {"txIndex", r.tx_index},
      {"logIndex", r.log_index}};
}

void from_json(const nlohmann::json& j, DelegationRecord& r) {
  r.token = Address::parse(j.at("token").get<std::string>());
  r.delegator = Address::parse(j.at("delegator").get<std::string>());
  r.delegate = Address::parse(j.at("delegate").get<std::string>());
  r.self_delegation = j.value("selfDelegation", false);
  r.delegator_kind = j.value("delegatorKind", "eoa") == std::string("contract")
                         ? AccountKind::Contract
                         : AccountKind::ExternallyOwned;
  r.delegate_kind = j.value("delegateKind", "eoa") == std::string("contract")
                        ? AccountKind::Contract
                        : AccountKind::ExternallyOwned;
  r.block_number = j.at("blockNumber").get<std::uint64_t>();
  r.tx_index = j.at("txIndex").get<std::uint32_t>();
  r.log_index = j.at("logIndex").get<std::uint32_t>();
}

nlohmann::json network_to_json(const MetagovNetwork& net) {
  nlohmann::json j;
  j["provenance"] = {{"startBlock", net.provenance.range.start_block},
                     {"endBlock", net.provenance.range.end_block},
                     {"seedHash", net.provenance.seed_hash},
                     {"expansionDepth", net.provenance.expansion_depth}};
  j["vertices"] = nlohmann::json::array();
  for (const auto& [id, dao] : net.vertices()) {
    j["vertices"].push_back(dao);
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& [key, edge] : net.edges()) {
    j["edges"].push_back({{"source", edge.source_dao},
                          {"target", edge.target_dao},
                          {"kind", std::string(edge_kind_name(edge.kind))},
                          {"evidence", edge.evidence},
                          {"firstSeen", edge.first_seen}});
  }
  if (net.funnel) {
    const DelegationFunnel& f = *net.funnel;
    j["delegationFunnel"] = {
        {"stages",
         nlohmann::json::array(
             {{{"name", "contract delegations"}, {"count", f.total}},
              {{"name", "self-delegations"}, {"count", f.self_delegations}},
              {{"name", "distinct dao-to-dao"},
               {"count", f.distinct_dao_to_dao}},
              {{"name", "active delegates"}, {"count", f.active_delegates}},
              {{"name", "new edges"}, {"count", f.new_edges}}})}};
  }
  return j;
}

MetagovNetwork network_from_json(const nlohmann::json& j) {
  MetagovNetwork net;
  const auto& prov = j.at("provenance");
  net.provenance.range = ScanRange(prov.at("startBlock").get<std::uint64_t>(),
                                   prov.at("endBlock").get<std::uint64_t>());
  net.provenance.seed_hash = prov.value("seedHash", "");
  net.provenance.expansion_depth = prov.value("expansionDepth", 0);
  for (const auto& vj : j.at("vertices")) {
    net.upsert_vertex(vj.get<DaoIdentity>());
  }
  for (const auto& ej : j.at("edges")) {
    net.add_edge(ej.at("source").get<std::string>(),
                 ej.at("target").get<std::string>(),
                 edge_kind_from_name(ej.at("kind").get<std::string>()),
                 ej.at("evidence").get<std::vector<std::string>>(),
                 ej.at("firstSeen").get<std::string>());
  }
  if (j.contains("delegationFunnel")) {
    DelegationFunnel f;
    const auto& stages = j.at("delegationFunnel").at("stages");
    f.total = stages.at(0).at("count").get<std::uint64_t>();
    f.self_delegations = stages.at(1).at("count").get<std::uint64_t>();
    f.distinct_dao_to_dao = stages.at(2).at("count").get<std::uint64_t>();
    f.active_delegates = stages.at(3).at("count").get<std::uint64_t>();
    f.new_edges = stages.at(4).at("count").get<std::uint64_t>();
    net.funnel = f;
  }
  return net;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_network(const MetagovNetwork& net, ExportFormat format) {
  switch (format) {
    case ExportFormat::JSON:
      return network_to_json(net).dump(2) + "\n";

    case ExportFormat::DOT: {
      std::ostringstream out;
      out << "digraph metagovernance {\n";
      out << "  rankdir=LR;\n";
      for (const auto& [id, dao] : net.vertices()) {
        out << "  \"" << dot_escape(id) << "\" [label=\""
            << dot_escape(dao.display_name.empty() ? id : dao.display_name)
            << "\"];\n";
      }
      for (const auto& [key, edge] : net.edges()) {
        out << "  \"" << dot_escape(edge.source_dao) << "\" -> \""
            << dot_escape(edge.target_dao) << "\" [label=\""
            << edge_kind_name(edge.kind) << "\",weight="
            << edge.evidence.size() << "];\n";
      }
      out << "}\n";
      return out.str();
    }

    case ExportFormat::GraphML: {
      std::ostringstream out;
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
      out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
      out << "  <key id=\"name\" for=\"node\" attr.name=\"name\" "
             "attr.type=\"string\"/>\n";
      out << "  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" "
             "attr.type=\"string\"/>\n";
      out << "  <key id=\"votes\" for=\"edge\" attr.name=\"evidence\" "
             "attr.type=\"long\"/>\n";
      out << "  <graph id=\"metagovernance\" edgedefault=\"directed\">\n";
      for (const auto& [id, dao] : net.vertices()) {
        out << "    <node id=\"" << xml_escape(id) << "\"><data key=\"name\">"
            << xml_escape(dao.display_name.empty() ? id : dao.display_name)
            << "</data></node>\n";
      }
      std::size_t edge_no = 0;
      for (const auto& [key, edge] : net.edges()) {
        out << "    <edge id=\"e" << edge_no++ << "\" source=\""
            << xml_escape(edge.source_dao) << "\" target=\""
            << xml_escape(edge.target_dao) << "\"><data key=\"kind\">"
            << edge_kind_name(edge.kind) << "</data><data key=\"votes\">"
            << edge.evidence.size() << "</data></edge>\n";
      }
      out << "  </graph>\n";
      out << "</graphml>\n";
      return out.str();
    }
  }
  throw Error("unknown export format");
}

}  // namespace metagov

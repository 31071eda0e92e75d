// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_METANET_HPP
#define METAGOV_METANET_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "metagov/govscan.hpp"
#include "metagov/labeler.hpp"
#include "metagov/snapshotio.hpp"
#include "metagov/voterscan.hpp"

namespace metagov {

enum class EdgeKind {
  OnChainVote,
  OffChainVote,
  Delegation,
};

std::string_view edge_kind_name(EdgeKind k);
EdgeKind edge_kind_from_name(std::string_view name);

/// A directed DAO-influences-DAO relationship. One edge per
/// (source, target, kind); repeated observations merge into `evidence`.
struct MetagovEdge {
  std::string source_dao;
  std::string target_dao;
  EdgeKind kind = EdgeKind::OnChainVote;
  std::vector<std::string> evidence;  // sorted unique record ids, non-empty
  std::string first_seen;             // "block:<n>" or "time:<unix>"
};

/// Counts along the delegation filtering funnel, in stage order.
struct DelegationFunnel {
  std::uint64_t total = 0;               // contract-involving delegations
  std::uint64_t self_delegations = 0;    // delegator == delegate
  std::uint64_t distinct_dao_to_dao = 0; // grouped (source, delegate, target)
  std::uint64_t active_delegates = 0;    // delegate voted at least once
  std::uint64_t new_edges = 0;           // Delegation edges actually added
};

struct NetworkProvenance {
  ScanRange range;
  std::string seed_hash;
  int expansion_depth = 0;
};

using EdgeKey = std::tuple<std::string, std::string, EdgeKind>;

/// The metagovernance graph. Every edge endpoint is a vertex; source and
/// target always differ; (source, target, kind) is unique.
class MetagovNetwork {
 public:
  /// Inserts or merges: existing fields win, blanks are filled in.
  void upsert_vertex(const DaoIdentity& dao);

  bool has_vertex(const std::string& id) const {
    return vertices_.contains(id);
  }
  const DaoIdentity* vertex(const std::string& id) const;
  void set_source(const std::string& id, DaoSource source);

  /// Adds or merges an edge. Throws Error on a self-loop or a missing
  /// endpoint. Returns true when the (source, target, kind) key was new.
  bool add_edge(const std::string& source, const std::string& target,
                EdgeKind kind, std::vector<std::string> evidence,
                const std::string& first_seen);

  const std::map<std::string, DaoIdentity>& vertices() const {
    return vertices_;
  }
  const std::map<EdgeKey, MetagovEdge>& edges() const { return edges_; }
  const MetagovEdge* edge(const std::string& source, const std::string& target,
                          EdgeKind kind) const;

  NetworkProvenance provenance;
  std::optional<DelegationFunnel> funnel;

 private:
  std::map<std::string, DaoIdentity> vertices_;
  std::map<EdgeKey, MetagovEdge> edges_;
};

/// Everything one DAO scan produced; the unit build_network consumes.
struct DaoScanResult {
  DaoIdentity dao;
  std::optional<GovernanceDetection> detection;
  VoterScanResult votes;
  std::optional<SpaceRecord> space;
  std::vector<OffchainVote> offchain_votes;
  DelegationScan delegations;
  std::vector<std::string> notes;
};

/// Builds the network from completed scans: one vertex per scanned DAO,
/// one edge per (voter DAO -> governed DAO) with full vote provenance.
/// Contract-account voters group into DAOs via their labels; unlabelled
/// voters become singleton vertices keyed by address.
MetagovNetwork build_network(const std::vector<DaoScanResult>& scans,
                             const LabelStore& labels,
                             const NetworkProvenance& provenance);

/// Adds one scan's vertices and vote edges into an existing network.
void merge_scan(MetagovNetwork& net, const DaoScanResult& scan,
                const LabelStore& labels);

struct ExpandStats {
  int rounds_run = 0;
  std::vector<std::string> scanned;  // dao ids, in scan order
  std::vector<std::string> errors;   // per-DAO failures, round continued
};

/// Iterative dataset expansion: DAOs discovered as labelled voters are
/// themselves scanned, up to `depth_limit` rounds. A DAO without a
/// discoverable voting-power address or space is a leaf. Already-scanned
/// ids (the seeds, at minimum) never rescan, which also terminates cycles.
ExpandStats expand(MetagovNetwork& net,
                   const std::function<DaoScanResult(const DaoIdentity&)>& scan_dao,
                   int depth_limit, const LabelStore& labels,
                   std::set<std::string>& scanned_ids);

/// Folds delegation records into Delegation edges:
///   total -> drop self-delegations -> group contract delegators by DAO
///   into (source, delegate, target-token DAO) triples -> keep triples
///   whose delegate voted at least once -> add edges not already present.
/// Sets net.funnel and returns it.
DelegationFunnel fold_delegations(
    MetagovNetwork& net, std::span<const DelegationRecord> delegations,
    const std::map<Address, std::uint64_t>& votes_by_delegate,
    const LabelStore& labels);

/// Vote counts per voter address across all scans (on-chain and
/// off-chain), the activity table fold_delegations consumes.
std::map<Address, std::uint64_t> collect_votes_by_voter(
    const std::vector<DaoScanResult>& scans);

struct DegreeEntry {
  std::string dao_id;
  std::uint64_t in_degree = 0;
  std::uint64_t out_degree = 0;
};

/// Degrees over distinct (source, target) pairs ignoring kind, sorted by
/// in-degree descending then dao id.
std::vector<DegreeEntry> degree_report(const MetagovNetwork& net);

struct ShareEntry {
  std::string proposal_id;
  Address voter;
  U256 voter_weight;
  U256 total_weight;  // sum of all cast weights on the proposal
  double share = 0.0;
  bool flagged = false;  // share strictly above the threshold
};

struct ShareReportResult {
  std::vector<ShareEntry> entries;  // by (proposal, voter)
  std::vector<std::string> skipped;  // rows without weights etc.
};

/// Per (voter, proposal) share of the total cast weight; flags shares
/// above `threshold` (default 15%).
ShareReportResult share_report(std::span<const VoteRecord> votes,
                               double threshold = 0.15);

/// Pass/fail rule for a proposal tally. Simple majority by default: more
/// weight for than against, ties fail. The quorum variant additionally
/// requires the for side to reach a minimum.
struct ThresholdRule {
  enum class Kind { SimpleMajority, Quorum };
  Kind kind = Kind::SimpleMajority;
  U256 quorum = 0;

  bool passes(const U256& for_total, const U256& against_total) const;
};

struct FlippedVoter {
  Address voter;
  U256 weight;
  std::uint8_t side = 0;  // 1 = for, 0 = against
};

struct DecisiveReport {
  std::string proposal_id;
  U256 for_total;
  U256 against_total;
  bool passed = false;
  /// Contract-account voters whose removal flips the outcome.
  std::vector<FlippedVoter> flipped;
  std::optional<Address> pivotal_voter;  // flipped voter with max weight
  U256 pivotal_weight;
};

/// Tallies one proposal's votes (support 1 = for, 0 = against, anything
/// else excluded) and finds the pivotal contract-account voters.
DecisiveReport decisive_report(std::span<const VoteRecord> proposal_votes,
                               const ThresholdRule& rule = {});

struct MentionEntry {
  std::string source_dao;
  std::string target_dao;
  std::uint64_t mention_count = 0;  // proposals mentioning the target
  std::uint64_t vote_count = 0;     // votes the source cast toward it
};

/// Case-insensitive whole-word match of `name` anywhere in `text`.
bool mentions_whole_word(std::string_view text, std::string_view name);

/// Counts, per target, the source DAO's proposals that mention the
/// target's display name, paired with the source's actual vote counts
/// toward that target (evidence on vote-kind edges).
std::vector<MentionEntry> mention_report(
    const std::string& source_dao, std::span<const ProposalText> proposals,
    const std::vector<std::pair<std::string, std::string>>& targets,
    const MetagovNetwork& net);

enum class ExportFormat { GraphML, DOT, JSON };

/// Deterministic serialization: vertices sorted by dao id, edges by
/// (source, target, kind). The JSON form round-trips through
/// network_from_json byte-identically and embeds the delegation funnel.
std::string export_network(const MetagovNetwork& net, ExportFormat format);

nlohmann::json network_to_json(const MetagovNetwork& net);
MetagovNetwork network_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const DaoIdentity& dao);
void from_json(const nlohmann::json& j, DaoIdentity& dao);
void to_json(nlohmann::json& j, const VoteRecord& r);
void from_json(const nlohmann::json& j, VoteRecord& r);
void to_json(nlohmann::json& j, const DelegationRecord& r);
void from_json(const nlohmann::json& j, DelegationRecord& r);

}  // namespace metagov

#endif  // METAGOV_METANET_HPP

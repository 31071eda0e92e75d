// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_PIPELINE_HPP
#define METAGOV_PIPELINE_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "metagov/metanet.hpp"

namespace metagov {

struct PipelineConfig {
  ScanRange range;
  KeywordPolicy policy;
  std::uint64_t min_followers = 50;
};

/// Runs the per-DAO scan sequence (governor identification, vote
/// extraction, off-chain resolution, delegation resolution) against one
/// set of data sources. The snapshot source may be null when a deployment
/// has no off-chain side.
class Pipeline {
 public:
  Pipeline(ChainReader& chain, SnapshotSource* snapshot, LabelStore& labels,
           PipelineConfig config);

  /// Full scan of one DAO. Missing pieces (no governor found, no space,
  /// no delegation events) are values with notes, never errors.
  DaoScanResult scan_dao(const DaoIdentity& dao);

  /// Lazily built reverse index over all spaces (empty without a source).
  const SpaceIndex& space_index();

  ChainReader& chain() { return chain_; }
  LabelStore& labels() { return labels_; }
  const PipelineConfig& config() const { return config_; }

 private:
  ChainReader& chain_;
  SnapshotSource* snapshot_;
  LabelStore& labels_;
  PipelineConfig config_;
  std::optional<SpaceIndex> index_;
};

/// Seed list rows: dao-id,display-name,voting-power-address[,snapshot-space]
/// with '#' comments. The address may be empty when a space is given.
std::vector<DaoIdentity> load_seed_csv(const std::filesystem::path& csv);

/// Deterministic digest of a seed list, recorded in network provenance.
std::string seed_list_hash(const std::vector<DaoIdentity>& seeds);

}  // namespace metagov

#endif  // METAGOV_PIPELINE_HPP

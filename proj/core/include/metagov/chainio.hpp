// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_CHAINIO_HPP
#define METAGOV_CHAINIO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metagov/model.hpp"

namespace metagov {

/// Inclusive block range a scan operates over.
struct ScanRange {
  std::uint64_t start_block = 0;
  std::uint64_t end_block = 0;

  ScanRange() = default;
  ScanRange(std::uint64_t start, std::uint64_t end);  // throws on start > end

  bool contains(std::uint64_t block) const {
    return block >= start_block && block <= end_block;
  }
  bool covers(const ScanRange& other) const {
    return other.start_block >= start_block && other.end_block <= end_block;
  }
};

/// Contract ABI metadata as served by an explorer API. abi_available is
/// false when the source has no verified ABI for the address — that is a
/// definitive value, not an error.
struct ContractMetadata {
  Address address;
  bool abi_available = false;
  std::vector<CanonicalSignature> abi_events;
  std::vector<CanonicalSignature> abi_functions;
  std::optional<nlohmann::json> abi_document;
  std::string fetched_at;  // provenance tag: "fixture", "rest", ...
};

/// Fills abi_events / abi_functions from abi_document.
void populate_metadata_signatures(ContractMetadata& meta);

/// Read access to on-chain observations. Implementations: fixture replay,
/// live JSON-RPC, and a recording wrapper. All results are value types;
/// implementations must be safe for concurrent reads.
class ChainReader {
 public:
  virtual ~ChainReader() = default;

  /// Every call-type trace whose `to` equals target within the range.
  /// Contract creations are not calls and never appear here.
  virtual std::vector<TraceRecord> traces_to(const Address& target,
                                             const ScanRange& range) = 0;

  /// Delegatecall traces originating from `source` (proxy resolution).
  virtual std::vector<TraceRecord> delegatecalls_from(
      const Address& source, const ScanRange& range) = 0;

  /// Contract iff code of nonzero length exists at the address at the
  /// given block height.
  virtual AccountKind account_kind(const Address& addr,
                                   std::uint64_t at_block) = 0;

  virtual ContractMetadata fetch_contract_metadata(const Address& addr) = 0;

  /// Logs emitted by `emitter` within range, sorted by
  /// (block_number, tx_index, log_index), optionally filtered on topic 0.
  virtual std::vector<EventLogRecord> fetch_logs(
      const Address& emitter, const ScanRange& range,
      const std::optional<TopicHash>& topic0_filter = std::nullopt) = 0;

  /// Caller address -> number of calls targeting `target` in range.
  /// Includes EOAs and the target itself (self-calls); filtering happens
  /// downstream.
  std::map<Address, std::uint64_t> contract_invocators(
      const Address& target, const ScanRange& range);
};

/// Code presence for one address. destroyed_at models self-destructs: the
/// account is a contract for blocks in [deployed_at, destroyed_at).
struct CodeRecord {
  Address address;
  std::uint64_t code_size = 0;
  std::uint64_t deployed_at = 0;
  std::optional<std::uint64_t> destroyed_at;
};

struct AbiRecord {
  Address address;
  bool verified = false;
  nlohmann::json abi;  // standard ABI array when verified
};

/// In-memory form of a fixture directory:
///
///   manifest.json  {"startBlock": N, "endBlock": M}
///   traces.jsonl   {"from","to","callType","blockNumber","txIndex","tracePath"}
///   logs.jsonl     {"address","topics","data","blockNumber","txIndex","logIndex"}
///   code.jsonl     {"address","codeSize","deployedAt","destroyedAt"?}
///   abi.jsonl      {"address","verified","abi"?}
///
/// Addresses and topics are 0x-hex; data is 0x-hex.
struct FixtureData {
  ScanRange coverage;
  std::vector<TraceRecord> traces;
  std::vector<EventLogRecord> logs;
  std::map<Address, CodeRecord> code;
  std::map<Address, AbiRecord> abis;

  static FixtureData load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;
};

/// Replays a recorded fixture. Never touches the network. A query about
/// an address the fixture does not know is a ReplayMissError; a block
/// range outside the recorded coverage is a DataUnavailableError. Both
/// are hard failures by design: offline runs must be hermetic.
class FixtureChainReader : public ChainReader {
 public:
  explicit FixtureChainReader(FixtureData data);

  static FixtureChainReader open(const std::filesystem::path& dir) {
    return FixtureChainReader(FixtureData::load(dir));
  }

  std::vector<TraceRecord> traces_to(const Address& target,
                                     const ScanRange& range) override;
  std::vector<TraceRecord> delegatecalls_from(const Address& source,
                                              const ScanRange& range) override;
  AccountKind account_kind(const Address& addr,
                           std::uint64_t at_block) override;
  ContractMetadata fetch_contract_metadata(const Address& addr) override;
  std::vector<EventLogRecord> fetch_logs(
      const Address& emitter, const ScanRange& range,
      const std::optional<TopicHash>& topic0_filter = std::nullopt) override;

  const FixtureData& data() const { return data_; }

 private:
  void check_range(const ScanRange& range) const;

  FixtureData data_;
};

/// Forwards to an upstream reader and appends every response to a
/// FixtureData sink, so a later FixtureChainReader can replay the session
/// byte-identically. Code entries are recorded at the queried block.
class RecordingChainReader : public ChainReader {
 public:
  RecordingChainReader(ChainReader& upstream, FixtureData& sink);

  std::vector<TraceRecord> traces_to(const Address& target,
                                     const ScanRange& range) override;
  std::vector<TraceRecord> delegatecalls_from(const Address& source,
                                              const ScanRange& range) override;
  AccountKind account_kind(const Address& addr,
                           std::uint64_t at_block) override;
  ContractMetadata fetch_contract_metadata(const Address& addr) override;
  std::vector<EventLogRecord> fetch_logs(
      const Address& emitter, const ScanRange& range,
      const std::optional<TopicHash>& topic0_filter = std::nullopt) override;

 private:
  void record_traces(const std::vector<TraceRecord>& traces);

  ChainReader& upstream_;
  FixtureData& sink_;
};

// JSON serialization for the fixture record types (nlohmann ADL).
void to_json(nlohmann::json& j, const TraceRecord& r);
void from_json(const nlohmann::json& j, TraceRecord& r);
void to_json(nlohmann::json& j, const EventLogRecord& r);
void from_json(const nlohmann::json& j, EventLogRecord& r);
void to_json(nlohmann::json& j, const CodeRecord& r);
void from_json(const nlohmann::json& j, CodeRecord& r);
void to_json(nlohmann::json& j, const AbiRecord& r);
void from_json(const nlohmann::json& j, AbiRecord& r);

}  // namespace metagov

#endif  // METAGOV_CHAINIO_HPP

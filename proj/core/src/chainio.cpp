// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/chainio.hpp"

#include <algorithm>
#include <fstream>

#include "metagov/abidec.hpp"
#include "metagov/errors.hpp"
#include "metagov/hex.hpp"

namespace metagov {

ScanRange::ScanRange(std::uint64_t start, std::uint64_t end)
    : start_block(start), end_block(end) {
  if (start > end) {
    throw ParseError("scan range start " + std::to_string(start) +
                     " exceeds end " + std::to_string(end));
  }
}

void populate_metadata_signatures(ContractMetadata& meta) {
  meta.abi_events.clear();
  meta.abi_functions.clear();
  if (!meta.abi_document.has_value()) return;
  const nlohmann::json& doc = *meta.abi_document;
  if (!doc.is_array()) throw AbiError("ABI document is not a JSON array");
  for (const auto& entry : doc) {
    if (!entry.is_object()) continue;
    const std::string type = entry.value("type", "");
    if (type == "event") {
      meta.abi_events.push_back(signature_from_abi_entry(entry));
    } else if (type == "function") {
      meta.abi_functions.push_back(signature_from_abi_entry(entry));
    }
  }
}

std::map<Address, std::uint64_t> ChainReader::contract_invocators(
    const Address& target, const ScanRange& range) {
  std::map<Address, std::uint64_t> counts;
  for (const TraceRecord& trace : traces_to(target, range)) {
    ++counts[trace.from];
  }
  return counts;
}

// ---------------------------------------------------------------------------
// JSON (fixture line formats)

void to_json(nlohmann::json& j, const TraceRecord& r) {
  j = nlohmann::json{{"from", r.from.hex()},
                     {"to", r.to.hex()},
                     {"callType", std::string(call_type_name(r.call_type))},
                     {"blockNumber", r.block_number},
                     {"txIndex", r.tx_index},
                     {"tracePath", r.trace_path}};
}

void from_json(const nlohmann::json& j, TraceRecord& r) {
  r.from = Address::parse(j.at("from").get<std::string>());
  r.to = Address::parse(j.at("to").get<std::string>());
  r.call_type = call_type_from_name(j.at("callType").get<std::string>());
  r.block_number = j.at("blockNumber").get<std::uint64_t>();
  r.tx_index = j.at("txIndex").get<std::uint32_t>();
  r.trace_path = j.value("tracePath", std::vector<std::uint32_t>{});
}

void to_json(nlohmann::json& j, const EventLogRecord& r) {
  std::vector<std::string> topics;
  topics.reserve(r.topics.size());
  for (const TopicHash& t : r.topics) topics.push_back(t.hex());
  j = nlohmann::json{{"address", r.emitter.hex()},
                     {"topics", topics},
                     {"data", hex::encode0x(r.data)},
                     {"blockNumber", r.block_number},
                     {"txIndex", r.tx_index},
                     {"logIndex", r.log_index}};
}

void from_json(const nlohmann::json& j, EventLogRecord& r) {
  r.emitter = Address::parse(j.at("address").get<std::string>());
  r.topics.clear();
  for (const auto& t : j.at("topics")) {
    r.topics.push_back(TopicHash::parse(t.get<std::string>()));
  }
  if (r.topics.size() > 4) throw ParseError("log has more than 4 topics");
  r.data = hex::decode0x(j.at("data").get<std::string>());
  r.block_number = j.at("blockNumber").get<std::uint64_t>();
  r.tx_index = j.at("txIndex").get<std::uint32_t>();
  r.log_index = j.at("logIndex").get<std::uint32_t>();
}

void to_json(nlohmann::json& j, const CodeRecord& r) {
  j = nlohmann::json{{"address", r.address.hex()},
                     {"codeSize", r.code_size},
                     {"deployedAt", r.deployed_at}};
  if (r.destroyed_at) j["destroyedAt"] = *r.destroyed_at;
}

void from_json(const nlohmann::json& j, CodeRecord& r) {
  r.address = Address::parse(j.at("address").get<std::string>());
  r.code_size = j.value("codeSize", std::uint64_t{0});
  r.deployed_at = j.value("deployedAt", std::uint64_t{0});
  if (j.contains("destroyedAt")) {
    r.destroyed_at = j.at("destroyedAt").get<std::uint64_t>();
  } else {
    r.destroyed_at.reset();
  }
}

void to_json(nlohmann::json& j, const AbiRecord& r) {
  j = nlohmann::json{{"address", r.address.hex()}, {"verified", r.verified}};
  if (r.verified) j["abi"] = r.abi;
}

void from_json(const nlohmann::json& j, AbiRecord& r) {
  r.address = Address::parse(j.at("address").get<std::string>());
  r.verified = j.value("verified", false);
  r.abi = r.verified ? j.at("abi") : nlohmann::json::array();
}

// ---------------------------------------------------------------------------
// FixtureData

namespace {

template <typename T>
void load_jsonl(const std::filesystem::path& file, std::vector<T>& out) {
  std::ifstream in(file);
  if (!in) return;  // absent file == no records of that type
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<T>());
    } catch (const std::exception& e) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
}

template <typename T>
void save_jsonl(const std::filesystem::path& file, const std::vector<T>& rows) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  for (const T& row : rows) {
    out << nlohmann::json(row).dump() << '\n';
  }
}

}  // namespace

FixtureData FixtureData::load(const std::filesystem::path& dir) {
  FixtureData data;
  {
    std::ifstream in(dir / "manifest.json");
    if (!in) {
      throw DataUnavailableError("fixture manifest missing: " +
                                 (dir / "manifest.json").string());
    }
    const auto manifest = nlohmann::json::parse(in);
    data.coverage = ScanRange(manifest.at("startBlock").get<std::uint64_t>(),
                              manifest.at("endBlock").get<std::uint64_t>());
  }
  load_jsonl(dir / "traces.jsonl", data.traces);
  load_jsonl(dir / "logs.jsonl", data.logs);
  std::vector<CodeRecord> code_rows;
  load_jsonl(dir / "code.jsonl", code_rows);
  for (CodeRecord& row : code_rows) {
    const Address addr = row.address;
    data.code[addr] = std::move(row);
  }
  std::vector<AbiRecord> abi_rows;
  load_jsonl(dir / "abi.jsonl", abi_rows);
  for (AbiRecord& row : abi_rows) {
    const Address addr = row.address;
    data.abis[addr] = std::move(row);
  }
  return data;
}

void FixtureData::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw Error("cannot write fixture manifest");
    out << nlohmann::json{{"startBlock", coverage.start_block},
                          {"endBlock", coverage.end_block}}
               .dump(2)
        << '\n';
  }
  save_jsonl(dir / "traces.jsonl", traces);
  save_jsonl(dir / "logs.jsonl", logs);
  std::vector<CodeRecord> code_rows;
  for (const auto& [addr, row] : code) code_rows.push_back(row);
  save_jsonl(dir / "code.jsonl", code_rows);
  std::vector<AbiRecord> abi_rows;
  for (const auto& [addr, row] : abis) abi_rows.push_back(row);
  save_jsonl(dir / "abi.jsonl", abi_rows);
}

// ---------------------------------------------------------------------------
// FixtureChainReader

FixtureChainReader::FixtureChainReader(FixtureData data)
    : data_(std::move(data)) {}

void FixtureChainReader::check_range(const ScanRange& range) const {
  if (!data_.coverage.covers(range)) {
    throw DataUnavailableError(
        "fixture covers blocks " + std::to_string(data_.coverage.start_block) +
        ".." + std::to_string(data_.coverage.end_block) +
        ", query wants " + std::to_string(range.start_block) + ".." +
        std::to_string(range.end_block));
  }
}

std::vector<TraceRecord> FixtureChainReader::traces_to(
    const Address& target, const ScanRange& range) {
  check_range(range);
  std::vector<TraceRecord> out;
  for (const TraceRecord& t : data_.traces) {
    if (t.to == target && t.call_type != CallType::Create &&
        range.contains(t.block_number)) {
      out.push_back(t);
    }
  }
  return out;
}

std::vector<TraceRecord> FixtureChainReader::delegatecalls_from(
    const Address& source, const ScanRange& range) {
  check_range(range);
  std::vector<TraceRecord> out;
  for (const TraceRecord& t : data_.traces) {
    if (t.from == source && t.call_type == CallType::DelegateCall &&
        range.contains(t.block_number)) {
      out.push_back(t);
    }
  }
  return out;
}

AccountKind FixtureChainReader::account_kind(const Address& addr,
                                             std::uint64_t at_block) {
  const auto it = data_.code.find(addr);
  if (it == data_.code.end()) {
    throw ReplayMissError("no code record for " + addr.hex() +
                          " in fixture (replay miss)");
  }
  const CodeRecord& rec = it->second;
  const bool live = rec.code_size > 0 && at_block >= rec.deployed_at &&
                    (!rec.destroyed_at || at_block < *rec.destroyed_at);
  return live ? AccountKind::Contract : AccountKind::ExternallyOwned;
}

ContractMetadata FixtureChainReader::fetch_contract_metadata(
    const Address& addr) {
  const auto it = data_.abis.find(addr);
  if (it == data_.abis.end()) {
    throw ReplayMissError("no abi record for " + addr.hex() +
                          " in fixture (replay miss)");
  }
  ContractMetadata meta;
  meta.address = addr;
  meta.abi_available = it->second.verified;
  if (meta.abi_available) meta.abi_document = it->second.abi;
  meta.fetched_at = "fixture";
  populate_metadata_signatures(meta);
  return meta;
}

std::vector<EventLogRecord> FixtureChainReader::fetch_logs(
    const Address& emitter, const ScanRange& range,
    const std::optional<TopicHash>& topic0_filter) {
  check_range(range);
  std::vector<EventLogRecord> out;
  for (const EventLogRecord& log : data_.logs) {
    if (log.emitter != emitter || !range.contains(log.block_number)) continue;
    if (topic0_filter && log.topic0() != *topic0_filter) continue;
    out.push_back(log);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// RecordingChainReader

RecordingChainReader::RecordingChainReader(ChainReader& upstream,
                                           FixtureData& sink)
    : upstream_(upstream), sink_(sink) {}

void RecordingChainReader::record_traces(
    const std::vector<TraceRecord>& traces) {
  for (const TraceRecord& t : traces) {
    const bool seen =
        std::any_of(sink_.traces.begin(), sink_.traces.end(),
                    [&](const TraceRecord& prev) {
                      return prev.block_number == t.block_number &&
                             prev.tx_index == t.tx_index &&
                             prev.trace_path == t.trace_path;
                    });
    if (!seen) sink_.traces.push_back(t);
  }
}

std::vector<TraceRecord> RecordingChainReader::traces_to(
    const Address& target, const ScanRange& range) {
  auto traces = upstream_.traces_to(target, range);
  record_traces(traces);
  return traces;
}

std::vector<TraceRecord> RecordingChainReader::delegatecalls_from(
    const Address& source, const ScanRange& range) {
  auto traces = upstream_.delegatecalls_from(source, range);
  record_traces(traces);
  return traces;
}

AccountKind RecordingChainReader::account_kind(const Address& addr,
                                               std::uint64_t at_block) {
  const AccountKind kind = upstream_.account_kind(addr, at_block);
  if (!sink_.code.contains(addr)) {
    CodeRecord rec;
    rec.address = addr;
    rec.code_size = kind == AccountKind::Contract ? 1 : 0;
    rec.deployed_at = 0;
    sink_.code[addr] = rec;
  }
  return kind;
}

ContractMetadata RecordingChainReader::fetch_contract_metadata(
    const Address& addr) {
  ContractMetadata meta = upstream_.fetch_contract_metadata(addr);
  if (!sink_.abis.contains(addr)) {
    AbiRecord rec;
    rec.address = addr;
    rec.verified = meta.abi_available;
    if (meta.abi_available && meta.abi_document) rec.abi = *meta.abi_document;
    sink_.abis[addr] = rec;
  }
  return meta;
}

std::vector<EventLogRecord> RecordingChainReader::fetch_logs(
    const Address& emitter, const ScanRange& range,
    const std::optional<TopicHash>& topic0_filter) {
  auto logs = upstream_.fetch_logs(emitter, range, topic0_filter);
  for (const EventLogRecord& log : logs) {
    const bool seen = std::any_of(
        sink_.logs.begin(), sink_.logs.end(), [&](const EventLogRecord& prev) {
          return prev.block_number == log.block_number &&
                 prev.tx_index == log.tx_index &&
                 prev.log_index == log.log_index;
        });
    if (!seen) sink_.logs.push_back(log);
  }
  return logs;
}

}  // namespace metagov

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef METAGOV_SIGSTORE_HPP
#define METAGOV_SIGSTORE_HPP

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "metagov/model.hpp"

namespace metagov {

enum class SignatureKind {
  Event,
  Function,
};

/// One known signature. For events the lookup key is the full topic hash;
/// for functions it is the first 4 bytes of the digest.
struct SignatureEntry {
  CanonicalSignature canonical;
  TopicHash topic;  // full keccak-256 digest for both kinds
  SignatureKind kind = SignatureKind::Event;
  std::string source;  // provenance tag, e.g. the dump filename

  static SignatureEntry make(CanonicalSignature sig, SignatureKind kind,
                             std::string source);
};

/// Keyword sets driving governance/delegation classification. The keyword
/// lists are configurable; the defaults follow the usual governance
/// vocabulary ("vote", "proposal", "delegate").
struct KeywordPolicy {
  std::vector<std::string> governance_keywords{"vote", "proposal"};
  std::vector<std::string> delegation_keywords{"delegate"};
};

/// Case-insensitive substring match of any keyword against a name.
/// Matching is on names only, never on parameter types.
bool name_matches_any(std::string_view name,
                      std::span<const std::string> keywords);

/// Returns the subset of keywords that match, lowercased, in policy order.
std::vector<std::string> matched_keywords(
    std::string_view name, std::span<const std::string> keywords);

/// True iff at least one entry (event or function) of one contract's
/// signature set carries a governance keyword in its name.
bool classify_governance(std::span<const SignatureEntry> entries,
                         const KeywordPolicy& policy);

/// All *event* entries whose name matches a delegation keyword, sorted by
/// canonical text. Unlike classify_governance this returns the matched
/// entries themselves; delegation resolution needs the signatures, not a
/// verdict.
std::vector<SignatureEntry> find_delegation_signatures(
    std::span<const SignatureEntry> entries, const KeywordPolicy& policy);

struct IngestReport {
  std::size_t ingested = 0;  // new entries only; duplicates don't count
  std::vector<std::pair<std::size_t, std::string>> failures;  // line, reason
};

/// Local database of known signatures built from text dumps.
///
/// Dump format: one canonical signature per line, UTF-8; blank lines and
/// '#' comments are skipped. The store deduplicates on (canonical, kind)
/// and keeps the first source seen.
///
/// Concurrency: reads may run concurrently; ingestion and load require
/// exclusive access.
class SignatureStore {
 public:
  IngestReport ingest_dump(std::istream& lines, SignatureKind kind,
                           std::string_view source_tag);

  std::size_t size() const { return entries_.size(); }

  /// Entries whose full digest equals the given hash.
  std::vector<SignatureEntry> lookup(const TopicHash& topic) const;

  /// Event entries whose 4-byte selector matches (function lookups).
  std::vector<SignatureEntry> lookup_selector(
      const std::array<std::uint8_t, 4>& selector) const;

  std::vector<SignatureEntry> all() const;

  /// Persists as sorted text, one entry per line:
  ///   <E|F>\t<canonical>\t<source>
  /// save(load(f)) reproduces f byte-exactly for files produced by save.
  void save(std::ostream& out) const;
  static SignatureStore load(std::istream& in);

 private:
  // Key: (canonical text, kind) — the dedup unit.
  std::map<std::pair<std::string, SignatureKind>, SignatureEntry> entries_;
};

}  // namespace metagov

#endif  // METAGOV_SIGSTORE_HPP

// Copyright 2026 The metagov Authors
// SPDX-License-Identifier: Apache-2.0

#include "metagov/sigstore.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

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

SignatureEntry SignatureEntry::make(CanonicalSignature sig, SignatureKind kind,
                                    std::string source) {
  SignatureEntry e;
  e.topic = signature_topic_hash(sig);
  e.canonical = std::move(sig);
  e.kind = kind;
  e.source = std::move(source);
  return e;
}

bool name_matches_any(std::string_view name,
                      std::span<const std::string> keywords) {
  const std::string lname = to_lower(name);
  return std::any_of(keywords.begin(), keywords.end(),
                     [&](const std::string& kw) {
                       return !kw.empty() &&
                              lname.find(to_lower(kw)) != std::string::npos;
                     });
}

std::vector<std::string> matched_keywords(
    std::string_view name, std::span<const std::string> keywords) {
  const std::string lname = to_lower(name);
  std::vector<std::string> out;
  for (const std::string& kw : keywords) {
    const std::string lkw = to_lower(kw);
    if (!lkw.empty() && lname.find(lkw) != std::string::npos) {
      out.push_back(lkw);
    }
  }
  return out;
}

bool classify_governance(std::span<const SignatureEntry> entries,
                         const KeywordPolicy& policy) {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const SignatureEntry& e) {
                       return name_matches_any(e.canonical.name,
                                               policy.governance_keywords);
                     });
}

std::vector<SignatureEntry> find_delegation_signatures(
    std::span<const SignatureEntry> entries, const KeywordPolicy& policy) {
  std::vector<SignatureEntry> out;
  for (const SignatureEntry& e : entries) {
    if (e.kind == SignatureKind::Event &&
        name_matches_any(e.canonical.name, policy.delegation_keywords)) {
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SignatureEntry& a, const SignatureEntry& b) {
              return a.canonical.text() < b.canonical.text();
            });
  return out;
}

IngestReport SignatureStore::ingest_dump(std::istream& lines,
                                         SignatureKind kind,
                                         std::string_view source_tag) {
  IngestReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    try {
      auto sig = CanonicalSignature::parse(sv);
      auto key = std::make_pair(sig.text(), kind);
      if (entries_.contains(key)) continue;
      entries_.emplace(std::move(key),
                       SignatureEntry::make(std::move(sig), kind,
                                            std::string(source_tag)));
      ++report.ingested;
    } catch (const ParseError& e) {
      report.failures.emplace_back(line_no, e.what());
    }
  }
  return report;
}

std::vector<SignatureEntry> SignatureStore::lookup(
    const TopicHash& topic) const {
  std::vector<SignatureEntry> out;
  for (const auto& [key, entry] : entries_) {
    if (entry.topic == topic) out.push_back(entry);
  }
  return out;
}

std::vector<SignatureEntry> SignatureStore::lookup_selector(
    const std::array<std::uint8_t, 4>& selector) const {
  std::vector<SignatureEntry> out;
  for (const auto& [key, entry] : entries_) {
    if (std::equal(selector.begin(), selector.end(),
                   entry.topic.bytes().begin())) {
      out.push_back(entry);
    }
  }
  return out;
}

std::vector<SignatureEntry> SignatureStore::all() const {
  std::vector<SignatureEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(entry);
  return out;
}

void SignatureStore::save(std::ostream& out) const {
  // entries_ iterates in (canonical, kind) order already.
  for (const auto& [key, entry] : entries_) {
    out << (entry.kind == SignatureKind::Event ? 'E' : 'F') << '\t'
        << key.first << '\t' << entry.source << '\n';
  }
}

SignatureStore SignatureStore::load(std::istream& in) {
  SignatureStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                : line.find('\t', tab1 + 1);
    if (tab1 != 1 || tab2 == std::string::npos ||
        (line[0] != 'E' && line[0] != 'F')) {
      throw ParseError("bad signature store line " + std::to_string(line_no) +
                       ": " + line);
    }
    const auto kind =
        line[0] == 'E' ? SignatureKind::Event : SignatureKind::Function;
    auto sig = CanonicalSignature::parse(
        std::string_view(line).substr(2, tab2 - 2));
    store.entries_.emplace(
        std::make_pair(sig.text(), kind),
        SignatureEntry::make(std::move(sig), kind, line.substr(tab2 + 1)));
  }
  return store;
}

}  // namespace metagov

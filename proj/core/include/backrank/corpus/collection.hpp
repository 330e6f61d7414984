// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace backrank::corpus {

/// A document or a query: identifier plus its tokenized text.
struct TextRecord {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const TextRecord&) const = default;
};

using Document = TextRecord;
using Query = TextRecord;

struct QrelEntry {
  std::string query_id;
  std::string doc_id;
  int grade = 0;
};

/// Relevance judgements (query_id, doc_id) -> non-negative grade, kept in file order.
class Qrels {
 public:
  /// Stores a judgement. A repeated pair overwrites the earlier grade (last one
  /// wins) and returns true.
  bool set(std::string query_id, std::string doc_id, int grade);
  /// Grade of the pair, 0 when unjudged.
  int grade(std::string_view query_id, std::string_view doc_id) const;
  bool has_query(std::string_view query_id) const;
  /// Every grade judged for a query, in file order.
  std::vector<int> grades_for(std::string_view query_id) const;
  std::vector<std::string> query_ids() const;

  const std::vector<QrelEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<QrelEntry> entries_;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_query_;
};

/// Documents, queries and judgements. Ids are unique within their kind.
class Collection {
 public:
  void add_document(Document doc);
  void add_query(Query query);
  void set_qrels(Qrels qrels) { qrels_ = std::move(qrels); }

  const std::vector<Document>& documents() const noexcept { return docs_; }
  const std::vector<Query>& queries() const noexcept { return queries_; }
  const Qrels& qrels() const noexcept { return qrels_; }

  const Document* find_document(std::string_view id) const;
  const Query* find_query(std::string_view id) const;
  std::optional<std::size_t> document_index(std::string_view id) const;

  /// Throws DomainError naming the first qrels entry whose query or document is unknown.
  void check_qrels() const;

 private:
  std::vector<Document> docs_;
  std::vector<Query> queries_;
  Qrels qrels_;
  std::map<std::string, std::size_t, std::less<>> doc_index_;
  std::map<std::string, std::size_t, std::less<>> query_index_;
};

/// `id<TAB>text` per line; text is tokenized on read. Blank lines are skipped.
std::vector<TextRecord> read_tsv(const std::filesystem::path& path);
void write_tsv(const std::filesystem::path& path, const std::vector<TextRecord>& records);

struct QrelsReadResult {
  Qrels qrels;
  std::size_t duplicates = 0;
};

/// `qid 0 docid rel` per line. Grades must be non-negative integers.
QrelsReadResult read_qrels(const std::filesystem::path& path);
void write_qrels(const std::filesystem::path& path, const Qrels& qrels);

/// Loads docs.tsv, queries.tsv and qrels.txt from a corpus directory.
Collection load_collection(const std::filesystem::path& dir);
void save_collection(const std::filesystem::path& dir, const Collection& collection);

}  // namespace backrank::corpus

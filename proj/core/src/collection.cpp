// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/corpus/collection.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "backrank/corpus/tokenize.hpp"
#include "backrank/error.hpp"

namespace backrank::corpus {

namespace fs = std::filesystem;

bool Qrels::set(std::string query_id, std::string doc_id, int grade) {
  if (grade < 0) throw DomainError("relevance grades must be non-negative");
  auto key = std::make_pair(query_id, doc_id);
  if (auto it = index_.find(key); it != index_.end()) {
    entries_[it->second].grade = grade;
    return true;
  }
  const std::size_t pos = entries_.size();
  index_.emplace(std::move(key), pos);
  by_query_[query_id].push_back(pos);
  entries_.push_back(QrelEntry{std::move(query_id), std::move(doc_id), grade});
  return false;
}

int Qrels::grade(std::string_view query_id, std::string_view doc_id) const {
  auto it = index_.find(std::make_pair(std::string(query_id), std::string(doc_id)));
  return it == index_.end() ? 0 : entries_[it->second].grade;
}

bool Qrels::has_query(std::string_view query_id) const { return by_query_.find(query_id) != by_query_.end(); }

std::vector<int> Qrels::grades_for(std::string_view query_id) const {
  std::vector<int> out;
  if (auto it = by_query_.find(query_id); it != by_query_.end()) {
    for (std::size_t pos : it->second) out.push_back(entries_[pos].grade);
  }
  return out;
}

std::vector<std::string> Qrels::query_ids() const {
  std::vector<std::string> ids;
  for (const auto& [qid, _] : by_query_) ids.push_back(qid);
  return ids;
}

void Collection::add_document(Document doc) {
  if (doc_index_.count(doc.id)) throw DomainError(fmt::format("duplicate document id '{}'", doc.id));
  doc_index_.emplace(doc.id, docs_.size());
  docs_.push_back(std::move(doc));
}

void Collection::add_query(Query query) {
  if (query_index_.count(query.id)) throw DomainError(fmt::format("duplicate query id '{}'", query.id));
  query_index_.emplace(query.id, queries_.size());
  queries_.push_back(std::move(query));
}

const Document* Collection::find_document(std::string_view id) const {
  auto it = doc_index_.find(id);
  return it == doc_index_.end() ? nullptr : &docs_[it->second];
}

const Query* Collection::find_query(std::string_view id) const {
  auto it = query_index_.find(id);
  return it == query_index_.end() ? nullptr : &queries_[it->second];
}

std::optional<std::size_t> Collection::document_index(std::string_view id) const {
  auto it = doc_index_.find(id);
  if (it == doc_index_.end()) return std::nullopt;
  return it->second;
}

void Collection::check_qrels() const {
  for (const auto& e : qrels_.entries()) {
    if (!find_query(e.query_id)) throw DomainError(fmt::format("qrels query '{}' is not in the collection", e.query_id));
    if (!find_document(e.doc_id)) throw DomainError(fmt::format("qrels document '{}' is not in the collection", e.doc_id));
  }
}

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}' for reading", path.string()));
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

}  // namespace

std::vector<TextRecord> read_tsv(const fs::path& path) {
  auto in = open_input(path);
  std::vector<TextRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError(path.string(), line_no, "expected 'id<TAB>text'");
    records.push_back(TextRecord{line.substr(0, tab), tokenize(std::string_view(line).substr(tab + 1))});
  }
  return records;
}

void write_tsv(const fs::path& path, const std::vector<TextRecord>& records) {
  auto out = open_output(path);
  for (const auto& r : records) out << r.id << '\t' << join_tokens(r.tokens) << '\n';
}

QrelsReadResult read_qrels(const fs::path& path) {
  auto in = open_input(path);
  QrelsReadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string qid, iter, docid, rel, extra;
    if (!(fields >> qid)) continue;
    if (!(fields >> iter >> docid >> rel) || (fields >> extra)) {
      throw ParseError(path.string(), line_no, "expected 'qid 0 docid rel'");
    }
    int grade = 0;
    const auto [ptr, ec] = std::from_chars(rel.data(), rel.data() + rel.size(), grade);
    if (ec != std::errc() || ptr != rel.data() + rel.size()) {
      throw ParseError(path.string(), line_no, fmt::format("relevance '{}' is not an integer", rel));
    }
    if (grade < 0) throw ParseError(path.string(), line_no, "relevance must be non-negative");
    if (result.qrels.set(qid, docid, grade)) {
      ++result.duplicates;
      spdlog::warn("{}:{}: duplicate judgement for ({}, {}); keeping the last one", path.string(), line_no, qid,
                   docid);
    }
  }
  return result;
}

void write_qrels(const fs::path& path, const Qrels& qrels) {
  auto out = open_output(path);
  for (const auto& e : qrels.entries()) out << e.query_id << " 0 " << e.doc_id << ' ' << e.grade << '\n';
}

Collection load_collection(const fs::path& dir) {
  Collection c;
  for (auto& d : read_tsv(dir / "docs.tsv")) c.add_document(std::move(d));
  for (auto& q : read_tsv(dir / "queries.tsv")) c.add_query(std::move(q));
  if (fs::exists(dir / "qrels.txt")) c.set_qrels(read_qrels(dir / "qrels.txt").qrels);
  return c;
}

void save_collection(const fs::path& dir, const Collection& collection) {
  fs::create_directories(dir);
  write_tsv(dir / "docs.tsv", collection.documents());
  write_tsv(dir / "queries.tsv", collection.queries());
  write_qrels(dir / "qrels.txt", collection.qrels());
}

}  // namespace backrank::corpus

// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/corpus/trec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "backrank/error.hpp"

namespace backrank::corpus {

std::vector<std::string> RankedList::doc_ids() const {
  std::vector<std::string> ids;
  ids.reserve(docs.size());
  for (const auto& d : docs) ids.push_back(d.doc_id);
  return ids;
}

void sort_ranked(std::vector<ScoredDoc>& docs) {
  std::sort(docs.begin(), docs.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
}

std::string format_run_line(const RunRecord& r) {
  return fmt::format("{} Q0 {} {} {:.6f} {}", r.query_id, r.doc_id, r.rank, r.score, r.tag);
}

std::vector<RunRecord> read_run(std::istream& in, const std::string& source) {
  std::vector<RunRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    RunRecord r;
    std::string q0, rank, score, extra;
    if (!(fields >> r.query_id)) continue;
    if (!(fields >> q0 >> r.doc_id >> rank >> score >> r.tag) || (fields >> extra)) {
      throw ParseError(source, line_no, "expected 'qid Q0 docid rank score tag'");
    }
    auto [rp, rec] = std::from_chars(rank.data(), rank.data() + rank.size(), r.rank);
    if (rec != std::errc() || rp != rank.data() + rank.size()) {
      throw ParseError(source, line_no, fmt::format("rank '{}' is not a non-negative integer", rank));
    }
    auto [sp, sec] = std::from_chars(score.data(), score.data() + score.size(), r.score);
    if (sec != std::errc() || sp != score.data() + score.size() || !std::isfinite(r.score)) {
      throw ParseError(source, line_no, fmt::format("score '{}' is not a finite number", score));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RunRecord> read_run(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}' for reading", path.string()));
  return read_run(in, path.string());
}

void write_run(std::ostream& out, const std::vector<RunRecord>& records) {
  for (const auto& r : records) out << format_run_line(r) << '\n';
}

void write_run(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  write_run(out, records);
}

std::vector<RankedList> group_run(const std::vector<RunRecord>& records) {
  std::vector<RankedList> lists;
  std::map<std::string, std::size_t, std::less<>> slot;
  std::vector<std::vector<const RunRecord*>> members;
  for (const auto& r : records) {
    auto [it, inserted] = slot.emplace(r.query_id, lists.size());
    if (inserted) {
      lists.push_back(RankedList{r.query_id, {}});
      members.emplace_back();
    }
    members[it->second].push_back(&r);
  }
  for (std::size_t i = 0; i < lists.size(); ++i) {
    auto& m = members[i];
    std::stable_sort(m.begin(), m.end(), [](const RunRecord* a, const RunRecord* b) { return a->rank < b->rank; });
    for (const RunRecord* r : m) lists[i].docs.push_back(ScoredDoc{r->doc_id, r->score});
  }
  return lists;
}

std::vector<RunRecord> to_run(const std::vector<RankedList>& lists, const std::string& tag) {
  std::vector<RunRecord> out;
  for (const auto& list : lists) {
    std::size_t rank = 1;
    for (const auto& d : list.docs) out.push_back(RunRecord{list.query_id, d.doc_id, rank++, d.score, tag});
  }
  return out;
}

}  // namespace backrank::corpus

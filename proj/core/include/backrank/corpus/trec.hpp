// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace backrank::corpus {

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

/// Documents of one query ordered by descending score, ties by ascending doc id.
struct RankedList {
  std::string query_id;
  std::vector<ScoredDoc> docs;

  std::vector<std::string> doc_ids() const;
  bool operator==(const RankedList&) const = default;
};

/// Sorts by score descending, then doc id ascending.
void sort_ranked(std::vector<ScoredDoc>& docs);

/// One line of a TREC run: `qid Q0 docid rank score tag`.
struct RunRecord {
  std::string query_id;
  std::string doc_id;
  std::size_t rank = 0;
  double score = 0.0;
  std::string tag;

  bool operator==(const RunRecord&) const = default;
};

/// Scores are written with exactly six decimals ("%.6f"), so reading a file this
/// library wrote and writing it back reproduces it byte for byte.
std::string format_run_line(const RunRecord& record);
std::vector<RunRecord> read_run(std::istream& in, const std::string& source = "<run>");
std::vector<RunRecord> read_run(const std::filesystem::path& path);
void write_run(std::ostream& out, const std::vector<RunRecord>& records);
void write_run(const std::filesystem::path& path, const std::vector<RunRecord>& records);

/// Groups records by query (first-appearance order) and orders each list by the
/// file's rank column. Ranks need not be contiguous.
std::vector<RankedList> group_run(const std::vector<RunRecord>& records);
/// Flattens ranked lists, numbering ranks from 1.
std::vector<RunRecord> to_run(const std::vector<RankedList>& lists, const std::string& tag);

}  // namespace backrank::corpus

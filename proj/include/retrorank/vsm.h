// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "retrorank/comment_ref.h"
#include "retrorank/textprep.h"

namespace retrorank::vsm {

using TermId = std::uint32_t;

/// Sparse non-negative weight vector, entries sorted by term id.
class TermVector {
 public:
  TermVector() = default;
  /// Zero weights are dropped; entries must be finite and non-negative.
  explicit TermVector(std::vector<std::pair<TermId, double>> entries);

  std::span<const std::pair<TermId, double>> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  double weight(TermId id) const;
  double norm() const;

  TermVector scaled(double k) const;

 private:
  std::vector<std::pair<TermId, double>> entries_;
};

/// Cosine similarity clamped to [0, 1]; 0 when either vector has zero norm.
double cosine_similarity(const TermVector& a, const TermVector& b);

enum class TfIdfScheme : std::uint32_t {
  kRawCount = 0,   // tf = count, idf = ln(N / df)
  kSublinear = 1,  // tf = 1 + ln(count), idf = ln(N / df)
};

std::optional<TfIdfScheme> parse_scheme(std::string_view name);

struct Document {
  CommentRef ref;
  textprep::TermList terms;
};

struct ScoredRef {
  CommentRef ref;
  double score = 0.0;
};

struct RankOutcome {
  std::vector<ScoredRef> results;  // score > 0 only, descending, ties by ref
  bool no_match = false;           // query had no weighted term in the index
};

class TfIdfIndex {
 public:
  /// Throws IndexError on an empty document set.
  static TfIdfIndex build(std::span<const Document> documents,
                          TfIdfScheme scheme = TfIdfScheme::kRawCount);

  std::size_t doc_count() const { return refs_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  TfIdfScheme scheme() const { return scheme_; }

  std::optional<TermId> term_id(const std::string& term) const;
  const std::string& term(TermId id) const { return terms_[id]; }
  std::size_t df(TermId id) const { return df_[id]; }
  double idf(TermId id) const;

  std::span<const CommentRef> refs() const { return refs_; }
  /// Vector of a document by position in refs().
  const TermVector& vector_at(std::size_t pos) const { return vectors_[pos]; }
  double norm_at(std::size_t pos) const { return norms_[pos]; }
  const TermVector* vector(const CommentRef& ref) const;

  /// Weights a term list against this index's idf; unseen terms get 0.
  TermVector vectorize(const textprep::TermList& terms) const;

  RankOutcome rank(const textprep::TermList& query) const;

  void save(const std::filesystem::path& path) const;
  static TfIdfIndex load(const std::filesystem::path& path);

 private:
  double tf_weight(std::size_t count) const;
  void finalize();

  TfIdfScheme scheme_ = TfIdfScheme::kRawCount;
  std::vector<std::string> terms_;  // sorted; position is the TermId
  std::unordered_map<std::string, TermId> term_ids_;
  std::vector<std::size_t> df_;
  std::vector<CommentRef> refs_;  // sorted
  std::unordered_map<CommentRef, std::size_t, CommentRefHash> positions_;
  std::vector<TermVector> vectors_;
  std::vector<double> norms_;
};

}  // namespace retrorank::vsm

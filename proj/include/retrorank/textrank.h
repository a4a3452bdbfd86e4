// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "retrorank/textprep.h"

namespace retrorank::textrank {

using VertexId = std::uint32_t;

/// Undirected weighted co-occurrence graph. Vertices are terms in
/// lexicographic order; adjacency lists are sorted by neighbor id.
class TermGraph {
 public:
  struct Edge {
    VertexId neighbor;
    double weight;
  };

  /// Edge weight = (comments in which both terms co-occur) / comment_count.
  /// window == 0 links every pair in a comment; window w > 1 only links
  /// terms at most w-1 positions apart.
  static TermGraph build(std::span<const textprep::TermList> comments, std::size_t window = 0);

  /// Explicit construction, mainly for tests. Duplicate pairs are summed;
  /// self-loops and non-positive weights are rejected.
  static TermGraph from_edges(std::vector<std::string> terms,
                              const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
                              std::size_t comment_count = 1);

  std::size_t vertex_count() const { return terms_.size(); }
  std::size_t edge_count() const;
  std::size_t comment_count() const { return comment_count_; }
  const std::string& term(VertexId v) const { return terms_[v]; }
  std::optional<VertexId> find(const std::string& term) const;
  std::span<const Edge> neighbors(VertexId v) const { return adjacency_[v]; }
  /// 0 when there is no edge.
  double weight(VertexId a, VertexId b) const;
  /// Sum of a vertex's incident edge weights.
  double strength(VertexId v) const { return strength_[v]; }

  TermGraph scaled(double k) const;

 private:
  void finalize();

  std::vector<std::string> terms_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<double> strength_;
  std::size_t comment_count_ = 0;
};

struct TextRankParams {
  double damping = 0.85;
  double tolerance = 1e-4;
  int max_iterations = 100;
};

struct TextRankResult {
  std::vector<double> scores;  // indexed by VertexId
  int iterations = 0;
  bool converged = false;
};

/// Synchronous weighted TextRank sweeps from an all-ones start until the
/// largest per-vertex change drops below the tolerance.
TextRankResult textrank_scores(const TermGraph& graph, const TextRankParams& params = {});

/// One synchronous application of the update rule to `scores`.
std::vector<double> textrank_sweep(const TermGraph& graph, std::span<const double> scores,
                                   double damping);

/// Top-N terms by converged score.
class TrDictionary {
 public:
  TrDictionary() = default;

  /// Descending by score, ties by term; at most top_n entries.
  static TrDictionary build(const TermGraph& graph, std::span<const double> scores, std::size_t top_n);
  static TrDictionary from_scores(std::vector<std::pair<std::string, double>> scores, std::size_t top_n);

  std::span<const std::pair<std::string, double>> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// 0 for terms outside the dictionary.
  double score(const std::string& term) const;
  double max_score() const { return entries_.empty() ? 0.0 : entries_.front().second; }

  /// `term<TAB>score` lines in rank order.
  void save(const std::filesystem::path& path) const;
  static TrDictionary load(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::string, double>> entries_;
  std::vector<std::pair<std::string, double>> by_term_;  // sorted by term
};

}  // namespace retrorank::textrank

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/textrank.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>
#include <unordered_map>

#include "retrorank/errors.h"

namespace retrorank::textrank {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

TermGraph TermGraph::build(std::span<const textprep::TermList> comments, std::size_t window) {
  TermGraph g;
  g.comment_count_ = comments.size();

  std::map<std::string, VertexId> ids;
  for (const auto& c : comments) {
    for (const auto& t : c) ids.emplace(t, 0);
  }
  g.terms_.reserve(ids.size());
  for (auto& [term, id] : ids) {
    id = static_cast<VertexId>(g.terms_.size());
    g.terms_.push_back(term);
  }

  std::unordered_map<std::uint64_t, std::uint32_t> pair_counts;
  std::vector<std::uint64_t> keys;
  for (const auto& c : comments) {
    keys.clear();
    std::vector<VertexId> seq;
    seq.reserve(c.size());
    for (const auto& t : c) seq.push_back(ids.at(t));
    if (window == 0) {
      std::sort(seq.begin(), seq.end());
      seq.erase(std::unique(seq.begin(), seq.end()), seq.end());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) keys.push_back(pair_key(seq[i], seq[j]));
      }
    } else {
      for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size() && j < i + window; ++j) {
          if (seq[i] != seq[j]) keys.push_back(pair_key(seq[i], seq[j]));
        }
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
    for (auto k : keys) ++pair_counts[k];
  }

  g.adjacency_.assign(g.terms_.size(), {});
  const double n = static_cast<double>(g.comment_count_);
  for (const auto& [key, count] : pair_counts) {
    const auto a = static_cast<VertexId>(key >> 32);
    const auto b = static_cast<VertexId>(key & 0xffffffffu);
    const double w = static_cast<double>(count) / n;
    g.adjacency_[a].push_back({b, w});
    g.adjacency_[b].push_back({a, w});
  }
  g.finalize();
  return g;
}

TermGraph TermGraph::from_edges(std::vector<std::string> terms,
                                const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
                                std::size_t comment_count) {
  TermGraph g;
  g.terms_ = std::move(terms);
  g.comment_count_ = comment_count;
  std::map<std::uint64_t, double> merged;
  for (const auto& [a, b, w] : edges) {
    if (a >= g.terms_.size() || b >= g.terms_.size()) throw ValidationError("edge vertex out of range");
    if (a == b) throw ValidationError("self-loops are not allowed");
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("edge weights must be positive");
    merged[pair_key(a, b)] += w;
  }
  g.adjacency_.assign(g.terms_.size(), {});
  for (const auto& [key, w] : merged) {
    const auto a = static_cast<VertexId>(key >> 32);
    const auto b = static_cast<VertexId>(key & 0xffffffffu);
    g.adjacency_[a].push_back({b, w});
    g.adjacency_[b].push_back({a, w});
  }
  g.finalize();
  return g;
}

void TermGraph::finalize() {
  strength_.assign(terms_.size(), 0.0);
  for (VertexId v = 0; v < adjacency_.size(); ++v) {
    auto& adj = adjacency_[v];
    std::sort(adj.begin(), adj.end(), [](const Edge& x, const Edge& y) { return x.neighbor < y.neighbor; });
    for (const auto& e : adj) strength_[v] += e.weight;
  }
}

std::size_t TermGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency_) n += adj.size();
  return n / 2;
}

std::optional<VertexId> TermGraph::find(const std::string& term) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it == terms_.end() || *it != term) return std::nullopt;
  return static_cast<VertexId>(it - terms_.begin());
}

double TermGraph::weight(VertexId a, VertexId b) const {
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Edge& e, VertexId key) { return e.neighbor < key; });
  return (it != adj.end() && it->neighbor == b) ? it->weight : 0.0;
}

TermGraph TermGraph::scaled(double k) const {
  TermGraph g = *this;
  for (auto& adj : g.adjacency_) {
    for (auto& e : adj) e.weight *= k;
  }
  g.finalize();
  return g;
}

std::vector<double> textrank_sweep(const TermGraph& graph, std::span<const double> scores, double damping) {
  std::vector<double> next(graph.vertex_count());
  for (VertexId i = 0; i < graph.vertex_count(); ++i) {
    double sum = 0.0;
    for (const auto& e : graph.neighbors(i)) {
      sum += e.weight / graph.strength(e.neighbor) * scores[e.neighbor];
    }
    next[i] = (1.0 - damping) + damping * sum;
  }
  return next;
}

TextRankResult textrank_scores(const TermGraph& graph, const TextRankParams& params) {
  if (!(params.damping > 0.0 && params.damping < 1.0)) {
    throw ValidationError("damping must lie in (0, 1)");
  }
  if (!(params.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (params.max_iterations < 1) throw ValidationError("max_iterations must be >= 1");

  TextRankResult result;
  result.scores.assign(graph.vertex_count(), 1.0);
  if (graph.vertex_count() == 0) {
    result.converged = true;
    return result;
  }
  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    auto next = textrank_sweep(graph, result.scores, params.damping);
    double delta = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      delta = std::max(delta, std::abs(next[i] - result.scores[i]));
    }
    result.scores = std::move(next);
    result.iterations = iter;
    if (delta < params.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

TrDictionary TrDictionary::from_scores(std::vector<std::pair<std::string, double>> scores, std::size_t top_n) {
  if (top_n < 1) throw ValidationError("top_n must be >= 1");
  std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scores.size() > top_n) scores.resize(top_n);
  TrDictionary dict;
  dict.entries_ = std::move(scores);
  dict.by_term_ = dict.entries_;
  std::sort(dict.by_term_.begin(), dict.by_term_.end());
  return dict;
}

TrDictionary TrDictionary::build(const TermGraph& graph, std::span<const double> scores, std::size_t top_n) {
  if (scores.size() != graph.vertex_count()) throw ValidationError("score vector does not match graph");
  std::vector<std::pair<std::string, double>> all;
  all.reserve(scores.size());
  for (VertexId v = 0; v < graph.vertex_count(); ++v) all.emplace_back(graph.term(v), scores[v]);
  return from_scores(std::move(all), top_n);
}

double TrDictionary::score(const std::string& term) const {
  auto it = std::lower_bound(by_term_.begin(), by_term_.end(), term,
                             [](const auto& e, const std::string& key) { return e.first < key; });
  return (it != by_term_.end() && it->first == term) ? it->second : 0.0;
}

void TrDictionary::save(const std::filesystem::path& path) const {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  char buf[64];
  for (const auto& [term, s] : entries_) {
    auto [ptr, errc] = std::to_chars(buf, buf + sizeof(buf), s);
    out << term << '\t' << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
  }
  if (!out) throw StorageError("write failed for " + path.string());
}

TrDictionary TrDictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StorageError("cannot read " + path.string());
  std::vector<std::pair<std::string, double>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    double s = 0.0;
    const char* begin = line.data() + (tab == std::string::npos ? 0 : tab + 1);
    auto [ptr, ec] = std::from_chars(begin, line.data() + line.size(), s);
    if (tab == std::string::npos || ec != std::errc() || !(s > 0.0)) {
      throw StorageError(path.string() + ":" + std::to_string(line_no) + ": malformed TR entry");
    }
    entries.emplace_back(line.substr(0, tab), s);
  }
  const auto n = std::max<std::size_t>(entries.size(), 1);
  return from_scores(std::move(entries), n);
}

}  // namespace retrorank::textrank

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/report.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace retrorank::report {

namespace {

std::string format_positions(const std::vector<int>& positions) {
  if (positions.size() == 1) return std::to_string(positions.front());
  std::string s = "(";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(positions[i]);
  }
  return s + ")*";
}

bool has_mode(std::span<const ranker::Mode> modes, ranker::Mode m) {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

struct Hypothesis {
  const char* id;
  ranker::Mode first;
  ranker::Mode second;
};

constexpr Hypothesis kHypotheses[] = {
    {"H1", ranker::Mode::kVsmSaTr, ranker::Mode::kVsmSa},
    {"H2", ranker::Mode::kVsmSaTr, ranker::Mode::kVsmTr},
    {"H3", ranker::Mode::kVsm, ranker::Mode::kVsmTr},
    {"H4", ranker::Mode::kVsm, ranker::Mode::kVsmSa},
    {"H5", ranker::Mode::kVsm, ranker::Mode::kVsmSaTr},
};

std::string format_p(double p) { return fmt::format("{:.1E}", p); }

}  // namespace

std::string performance_table(std::span<const evalkit::PositionTableRow> rows,
                              std::span<const ranker::Mode> modes, int k) {
  std::size_t query_width = 5;
  for (const auto& r : rows) {
    query_width = std::max(query_width, r.query_id.size() + 3 + r.query_text.size());
  }
  std::string out;
  out += fmt::format("{:<12} {:<{}}", "project", "query", query_width);
  for (auto m : modes) out += fmt::format(" {:>16}", ranker::mode_label(m));
  out += fmt::format(" {:>10} {}\n", "gold bug", "gold comments");

  for (const auto& r : rows) {
    const std::string query = r.query_text.empty() ? r.query_id : r.query_id + " > " + r.query_text;
    out += fmt::format("{:<12} {:<{}}", r.project, query, query_width);
    for (auto m : modes) {
      auto it = r.positions.find(m);
      out += fmt::format(" {:>16}", it == r.positions.end() ? std::string("-") : format_positions(it->second));
    }
    out += fmt::format(" {:>10} {}\n", r.gold_bug.empty() ? "--" : r.gold_bug,
                       r.gold_comments.empty() ? "--" : r.gold_comments);
  }

  const auto footer = [&](const std::string& label, auto metric, const char* spec) {
    out += fmt::format("{:<12} {:<{}}", "metric", label, query_width);
    for (auto m : modes) {
      const auto records = evalkit::records_for_mode(rows, m);
      out += fmt::format(" {:>16}", fmt::format(fmt::runtime(spec), metric(records)));
    }
    out += "\n";
  };
  footer("Average position (mu)", [](const auto& rec) { return evalkit::mean_position(rec); }, "{:.1f}");
  footer(fmt::format("MAP@{}", k), [k](const auto& rec) { return evalkit::map_at_k(rec, k); }, "{:.3f}");
  footer(fmt::format("MRR@{}", k), [k](const auto& rec) { return evalkit::mrr_at_k(rec, k); }, "{:.3f}");
  return out;
}

std::string statistics_table(std::span<const evalkit::PositionTableRow> rows,
                             std::span<const ranker::Mode> modes) {
  std::string out;
  out += fmt::format("{:<10} {:>4} {:>5} {:>5} {:>6} {:>6} {:>6}\n", "approach", "n", "min", "max",
                     "median", "mu", "sigma");
  std::map<ranker::Mode, evalkit::StatSummary> stats;
  for (auto m : modes) {
    const auto records = evalkit::records_for_mode(rows, m);
    const auto flat = evalkit::flatten_positions(records);
    if (flat.empty()) continue;
    const auto s = evalkit::summary(flat);
    stats[m] = s;
    out += fmt::format("{:<10} {:>4} {:>5g} {:>5g} {:>6g} {:>6.1f} {:>6.1f}\n", ranker::mode_label(m), s.n,
                       s.min, s.max, s.median, s.mean, s.sd);
  }
  out += "\n";
  out += fmt::format("{:<3} {:<22} {:>9} {:>9} {:>8} {:>8} {:>10} {}\n", "H", "comparison", "t", "df",
                     "t_crit", "p", "Cohen's d", "decision");
  for (const auto& h : kHypotheses) {
    if (!has_mode(modes, h.first) || !has_mode(modes, h.second)) continue;
    if (!stats.contains(h.first) || !stats.contains(h.second)) continue;
    const auto a = stats[h.first].moments();
    const auto b = stats[h.second].moments();
    if (a.n < 2 || b.n < 2) continue;
    const auto t = evalkit::students_t(a, b);
    std::string d = "NA";
    if (a.sd > 0 || b.sd > 0) d = fmt::format("{:.4f}", evalkit::cohens_d(a, b));
    out += fmt::format("{:<3} {:<22} {:>9.4f} {:>9g} {:>8.4f} {:>8} {:>10} {}\n", h.id,
                       fmt::format("{} vs {}", ranker::mode_label(h.first), ranker::mode_label(h.second)),
                       t.t, t.df, t.t_crit, format_p(t.p), d, t.reject ? "Reject" : "Accept");
  }
  return out;
}

std::string results_table(std::span<const ranker::RankedResult> results) {
  std::string out = fmt::format("{:>4}  {:<22} {:>8} {:>8} {:>8} {:>8}  {}\n", "rank", "comment", "score",
                                "vsm", "sa", "tr", "snippet");
  for (const auto& r : results) {
    std::string snippet = r.snippet;
    std::replace(snippet.begin(), snippet.end(), '\n', ' ');
    if (auto shorter = ranker::make_snippet(snippet, 77); shorter.size() < snippet.size()) {
      snippet = shorter + "...";
    }
    out += fmt::format("{:>4}  {:<22} {:>8.4f} {:>8.4f} {:>8.4f} {:>8.4f}  {}\n", r.rank, r.ref.to_string(),
                       r.final_score, r.vsm_score, r.sa_boost, r.tr_boost, snippet);
  }
  return out;
}

}  // namespace retrorank::report

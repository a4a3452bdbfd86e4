// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/evalkit.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "retrorank/distributions.h"
#include "retrorank/errors.h"

namespace retrorank::evalkit {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    line = strip(line);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<GoldsetEntry> parse_goldset(std::string_view text) {
  std::vector<GoldsetEntry> entries;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = strip(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    const auto where = "goldset line " + std::to_string(line_no);
    if (cols.size() != 3) throw ValidationError(where + ": expected 3 tab-separated columns");
    GoldsetEntry e;
    e.query_id = std::string(strip(cols[0]));
    e.query_text = std::string(strip(cols[1]));
    if (e.query_id.empty() || e.query_text.empty()) throw ValidationError(where + ": empty query");
    for (auto item : split(cols[2], ',')) {
      auto ref = CommentRef::parse(strip(item));
      if (!ref) throw ValidationError(where + ": bad comment reference '" + std::string(item) + "'");
      e.gold.push_back(std::move(*ref));
    }
    if (e.gold.empty()) throw ValidationError(where + ": empty gold set");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<GoldsetEntry> load_goldset(const std::filesystem::path& path) {
  return parse_goldset(read_file(path));
}

PositionRecord rank_positions(std::span<const ranker::RankedResult> results, std::span<const CommentRef> gold,
                              std::string query_id) {
  PositionRecord record;
  record.query_id = std::move(query_id);
  for (const auto& g : gold) {
    int pos = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].ref == g) {
        pos = static_cast<int>(i + 1);
        break;
      }
    }
    record.positions.push_back(pos);
  }
  return record;
}

std::vector<double> flatten_positions(std::span<const PositionRecord> records) {
  std::vector<double> out;
  for (const auto& r : records) {
    for (int p : r.positions) out.push_back(static_cast<double>(p));
  }
  return out;
}

double mean_position(std::span<const PositionRecord> records) {
  const auto flat = flatten_positions(records);
  if (flat.empty()) throw ValidationError("mean_position needs at least one observation");
  return std::accumulate(flat.begin(), flat.end(), 0.0) / static_cast<double>(flat.size());
}

double map_at_k(std::span<const PositionRecord> records, int k) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (records.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : records) {
    std::vector<int> hits;
    for (int p : r.positions) {
      if (p >= 1 && p <= k) hits.push_back(p);
    }
    if (hits.empty()) continue;
    std::sort(hits.begin(), hits.end());
    double ap = 0.0;
    for (std::size_t i = 0; i < hits.size(); ++i) ap += static_cast<double>(i + 1) / hits[i];
    const auto denom = std::min<std::size_t>(r.positions.size(), static_cast<std::size_t>(k));
    total += ap / static_cast<double>(denom);
  }
  return total / static_cast<double>(records.size());
}

double mrr_at_k(std::span<const PositionRecord> records, int k, MrrConvention convention) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (records.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : records) {
    int pos = 0;
    if (convention == MrrConvention::kPrimaryGold) {
      if (!r.positions.empty()) pos = r.positions.front();
    } else {
      for (int p : r.positions) {
        if (p >= 1 && (pos == 0 || p < pos)) pos = p;
      }
    }
    if (pos >= 1 && pos <= k) total += 1.0 / pos;
  }
  return total / static_cast<double>(records.size());
}

StatSummary summary(std::span<const double> values) {
  if (values.empty()) throw ValidationError("summary of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  StatSummary s;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

namespace {

double pooled_variance(const SampleMoments& a, const SampleMoments& b) {
  if (a.n < 2 || b.n < 2) throw ValidationError("each group needs n >= 2");
  return ((a.n - 1.0) * a.sd * a.sd + (b.n - 1.0) * b.sd * b.sd) / (a.n + b.n - 2.0);
}

}  // namespace

TTestResult students_t(const SampleMoments& a, const SampleMoments& b, double alpha) {
  TTestResult r;
  const double var = pooled_variance(a, b);
  r.df = a.n + b.n - 2.0;
  r.t_crit = student_t_quantile(1.0 - alpha / 2.0, r.df);
  const double diff = a.mean - b.mean;
  const double se = std::sqrt(var * (1.0 / a.n + 1.0 / b.n));
  if (se == 0.0) {
    if (diff == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
  } else {
    r.t = diff / se;
    r.p = student_t_two_tailed_p(r.t, r.df);
  }
  r.reject = r.p < alpha;
  return r;
}

double cohens_d(const SampleMoments& a, const SampleMoments& b) {
  const double sd = std::sqrt(pooled_variance(a, b));
  if (sd == 0.0) throw ValidationError("Cohen's d is undefined for zero pooled standard deviation");
  return std::abs(a.mean - b.mean) / sd;
}

AnovaResult anova_oneway(std::span<const std::vector<double>> groups, double alpha) {
  if (groups.size() < 2) throw ValidationError("ANOVA needs at least two groups");
  double grand_sum = 0.0;
  std::size_t total_n = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw ValidationError("each ANOVA group needs n >= 2");
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
    total_n += g.size();
  }
  const double grand_mean = grand_sum / static_cast<double>(total_n);
  double ss_between = 0.0;
  double ss_within = 0.0;
  for (const auto& g : groups) {
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) ss_within += (v - mean) * (v - mean);
  }
  AnovaResult r;
  r.df_between = static_cast<double>(groups.size() - 1);
  r.df_within = static_cast<double>(total_n - groups.size());
  r.f_crit = f_quantile(1.0 - alpha, r.df_between, r.df_within);
  if (ss_within == 0.0) {
    if (ss_between == 0.0) {
      r.f = 0.0;
      r.p = 1.0;
    } else {
      r.f = std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
  } else {
    r.f = (ss_between / r.df_between) / (ss_within / r.df_within);
    r.p = f_upper_p(r.f, r.df_between, r.df_within);
  }
  r.reject = r.p < alpha;
  return r;
}

std::vector<PositionTableRow> parse_position_table(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ValidationError("position table is empty");
  const auto header = split(lines.front(), '\t');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[std::string(strip(header[i]))] = i;
  if (!col.contains("query_id")) throw ValidationError("position table has no query_id column");

  std::vector<PositionTableRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split(lines[li], '\t');
    const auto cell = [&](const std::string& name) -> std::string {
      auto it = col.find(name);
      if (it == col.end() || it->second >= cells.size()) return {};
      return std::string(strip(cells[it->second]));
    };
    PositionTableRow row;
    row.project = cell("project");
    row.query_id = cell("query_id");
    row.query_text = cell("query");
    row.gold_bug = cell("gold_bug");
    row.gold_comments = cell("gold_comments");
    for (auto mode : ranker::kAllModes) {
      const std::string name(ranker::mode_name(mode));
      if (!col.contains(name)) continue;
      std::vector<int> positions;
      for (auto item : split(cell(name), ',')) {
        item = strip(item);
        int v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || v < 0) {
          throw ValidationError("position table row " + row.query_id + ": bad position '" +
                                std::string(item) + "'");
        }
        positions.push_back(v);
      }
      row.positions[mode] = std::move(positions);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PositionTableRow> load_position_table(const std::filesystem::path& path) {
  return parse_position_table(read_file(path));
}

std::vector<PositionRecord> records_for_mode(std::span<const PositionTableRow> rows, ranker::Mode mode) {
  std::vector<PositionRecord> out;
  for (const auto& row : rows) {
    auto it = row.positions.find(mode);
    if (it == row.positions.end()) continue;
    out.push_back({row.query_id, it->second});
  }
  return out;
}

}  // namespace retrorank::evalkit

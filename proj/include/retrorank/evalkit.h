// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrorank/comment_ref.h"
#include "retrorank/ranker.h"

namespace retrorank::evalkit {

struct GoldsetEntry {
  std::string query_id;
  std::string query_text;
  std::vector<CommentRef> gold;  // first entry is the primary gold comment
};

/// `query_id<TAB>query_text<TAB>project:bug:comment[,project:bug:comment...]`
/// per line; blank lines and `#` comments are skipped.
std::vector<GoldsetEntry> parse_goldset(std::string_view text);
std::vector<GoldsetEntry> load_goldset(const std::filesystem::path& path);

/// 1-based rank of each gold comment, 0 when it was not retrieved.
struct PositionRecord {
  std::string query_id;
  std::vector<int> positions;
};

PositionRecord rank_positions(std::span<const ranker::RankedResult> results,
                              std::span<const CommentRef> gold, std::string query_id = {});

/// Every gold position of every record, misses included as 0.
std::vector<double> flatten_positions(std::span<const PositionRecord> records);

/// Arithmetic mean of the flattened positions (zeros included).
double mean_position(std::span<const PositionRecord> records);

/// Which gold comment a query's reciprocal rank is taken from.
enum class MrrConvention {
  kPrimaryGold,  // the first-listed gold comment of the query
  kBestGold,     // the best-ranked gold comment of the query
};

/// Mean over queries of average precision over gold hits at rank <= k,
/// normalized by min(|gold|, k). Queries without hits contribute 0.
double map_at_k(std::span<const PositionRecord> records, int k = 10);

/// Mean over queries of 1/position when the chosen gold position is within
/// 1..k, else 0.
double mrr_at_k(std::span<const PositionRecord> records, int k = 10,
                MrrConvention convention = MrrConvention::kPrimaryGold);

struct SampleMoments {
  double n = 0;
  double mean = 0;
  double sd = 0;  // sample standard deviation (n - 1 denominator)
};

struct StatSummary {
  std::size_t n = 0;
  double min = 0;
  double max = 0;
  double median = 0;
  double mean = 0;
  double sd = 0;

  SampleMoments moments() const { return {static_cast<double>(n), mean, sd}; }
};

/// Throws ValidationError on empty input.
StatSummary summary(std::span<const double> values);

struct TTestResult {
  double t = 0;
  double df = 0;
  double p = 1;       // two-tailed
  double t_crit = 0;  // two-tailed critical value at alpha = 0.05
  bool reject = false;
};

/// Pooled-variance two-sample Student's t (a minus b). With zero pooled
/// variance: equal means give t = 0, unequal means give t = +/-infinity.
TTestResult students_t(const SampleMoments& a, const SampleMoments& b, double alpha = 0.05);

/// |mean_a - mean_b| / pooled sd. Throws ValidationError if the pooled sd is 0.
double cohens_d(const SampleMoments& a, const SampleMoments& b);

struct AnovaResult {
  double f = 0;
  double df_between = 0;
  double df_within = 0;
  double f_crit = 0;  // at alpha = 0.05
  double p = 1;
  bool reject = false;
};

/// One-way ANOVA over >= 2 groups of >= 2 values. All values identical -> F = 0.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups, double alpha = 0.05);

/// One row of the performance table: a query and its gold positions per mode.
struct PositionTableRow {
  std::string project;
  std::string query_id;
  std::string query_text;
  std::map<ranker::Mode, std::vector<int>> positions;
  std::string gold_bug;       // display only
  std::string gold_comments;  // display only
};

/// Header row names the columns: project, query_id, query, vsm, vsm_sa,
/// vsm_tr, vsm_sa_tr, gold_bug, gold_comments. Position cells are
/// comma-separated integers.
std::vector<PositionTableRow> parse_position_table(std::string_view text);
std::vector<PositionTableRow> load_position_table(const std::filesystem::path& path);

/// Records for one mode, in table order.
std::vector<PositionRecord> records_for_mode(std::span<const PositionTableRow> rows, ranker::Mode mode);

}  // namespace retrorank::evalkit

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retrorank/comment_ref.h"
#include "retrorank/sentiment.h"
#include "retrorank/textprep.h"
#include "retrorank/textrank.h"

namespace retrorank::ranker {

enum class Mode { kVsm, kVsmSa, kVsmTr, kVsmSaTr };

/// "vsm", "vsm_sa", "vsm_tr", "vsm_sa_tr".
std::optional<Mode> parse_mode(std::string_view name);
std::string_view mode_name(Mode mode);
/// Column labels used in reports: "VSM", "VSM+SA", ...
std::string_view mode_label(Mode mode);
inline constexpr Mode kAllModes[] = {Mode::kVsm, Mode::kVsmSa, Mode::kVsmTr, Mode::kVsmSaTr};

inline bool uses_sa(Mode m) { return m == Mode::kVsmSa || m == Mode::kVsmSaTr; }
inline bool uses_tr(Mode m) { return m == Mode::kVsmTr || m == Mode::kVsmSaTr; }

enum class Combine {
  kMultiply,  // vsm * (1 + l_sa*sa + l_tr*tr)
  kAdd,       // vsm + l_sa*sa + l_tr*tr
};

std::optional<Combine> parse_combine(std::string_view name);

struct RankConfig {
  Mode mode = Mode::kVsmSaTr;
  double lambda_sa = 1.0;
  double lambda_tr = 1.0;
  std::size_t top_k = 10;
  Combine combine = Combine::kMultiply;

  /// Throws ValidationError for negative lambdas or top_k == 0.
  void validate() const;
};

struct RankedResult {
  int rank = 0;  // 1-based
  CommentRef ref;
  double final_score = 0.0;
  double vsm_score = 0.0;
  double sa_boost = 0.0;
  double tr_boost = 0.0;
  std::string snippet;
};

struct RankResponse {
  std::vector<RankedResult> results;
  bool no_match = false;
};

/// Mean word polarity m of the comment (over its lowercased words, using
/// the SA dictionaries), clamped to [-1, 1] and mapped to (m + 1) / 2.
/// An empty comment scores the neutral 0.5.
double sa_boost(std::string_view comment_text, const sentiment::SaDictionaries& dicts);

/// Mean of score/max_score over the comment's distinct preprocessed terms;
/// terms outside the dictionary count as 0. Empty comment -> 0.
double tr_boost(const textprep::TermList& comment_terms, const textrank::TrDictionary& dict);

double combined_score(double vsm, double sa, double tr, const RankConfig& cfg);

/// First `max_chars` UTF-8 code points of `text`.
std::string make_snippet(std::string_view text, std::size_t max_chars = 200);

}  // namespace retrorank::ranker

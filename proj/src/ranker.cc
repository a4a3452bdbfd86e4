// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/ranker.h"

#include <algorithm>
#include <set>

#include "retrorank/errors.h"

namespace retrorank::ranker {

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "vsm") return Mode::kVsm;
  if (name == "vsm_sa") return Mode::kVsmSa;
  if (name == "vsm_tr") return Mode::kVsmTr;
  if (name == "vsm_sa_tr") return Mode::kVsmSaTr;
  return std::nullopt;
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kVsm: return "vsm";
    case Mode::kVsmSa: return "vsm_sa";
    case Mode::kVsmTr: return "vsm_tr";
    case Mode::kVsmSaTr: return "vsm_sa_tr";
  }
  return "vsm";
}

std::string_view mode_label(Mode mode) {
  switch (mode) {
    case Mode::kVsm: return "VSM";
    case Mode::kVsmSa: return "VSM+SA";
    case Mode::kVsmTr: return "VSM+TR";
    case Mode::kVsmSaTr: return "VSM+SA+TR";
  }
  return "VSM";
}

std::optional<Combine> parse_combine(std::string_view name) {
  if (name == "multiply") return Combine::kMultiply;
  if (name == "add") return Combine::kAdd;
  return std::nullopt;
}

void RankConfig::validate() const {
  if (!(lambda_sa >= 0.0)) throw ValidationError("lambda_sa must be >= 0");
  if (!(lambda_tr >= 0.0)) throw ValidationError("lambda_tr must be >= 0");
  if (top_k < 1) throw ValidationError("top_k must be >= 1");
}

double sa_boost(std::string_view comment_text, const sentiment::SaDictionaries& dicts) {
  const auto words = textprep::surface_words(comment_text);
  if (words.empty()) return 0.5;
  std::int64_t total = 0;
  for (const auto& w : words) total += dicts.lookup(w).micros();
  const double sum = static_cast<double>(total) / static_cast<double>(sentiment::Polarity::kScale);
  const double mean = std::clamp(sum / static_cast<double>(words.size()), -1.0, 1.0);
  return (mean + 1.0) / 2.0;
}

double tr_boost(const textprep::TermList& comment_terms, const textrank::TrDictionary& dict) {
  const std::set<std::string> distinct(comment_terms.begin(), comment_terms.end());
  if (distinct.empty() || dict.empty()) return 0.0;
  const double max = dict.max_score();
  double sum = 0.0;
  for (const auto& t : distinct) sum += dict.score(t) / max;
  return sum / static_cast<double>(distinct.size());
}

double combined_score(double vsm, double sa, double tr, const RankConfig& cfg) {
  if (cfg.mode == Mode::kVsm) return vsm;
  const double sa_term = uses_sa(cfg.mode) ? cfg.lambda_sa * sa : 0.0;
  const double tr_term = uses_tr(cfg.mode) ? cfg.lambda_tr * tr : 0.0;
  if (cfg.combine == Combine::kAdd) return vsm + sa_term + tr_term;
  return vsm * (1.0 + sa_term + tr_term);
}

std::string make_snippet(std::string_view text, std::size_t max_chars) {
  std::size_t i = 0;
  std::size_t count = 0;
  while (i < text.size() && count < max_chars) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (c >= 0xF0) {
      len = 4;
    } else if (c >= 0xE0) {
      len = 3;
    } else if (c >= 0xC0) {
      len = 2;
    }
    if (i + len > text.size()) break;
    i += len;
    ++count;
  }
  return std::string(text.substr(0, i));
}

}  // namespace retrorank::ranker

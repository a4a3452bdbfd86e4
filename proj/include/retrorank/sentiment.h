// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrorank/textprep.h"

namespace retrorank::sentiment {

/// Sentiment polarity in [-1, 1], held in millionths so that summing a
/// comment's word polarities is exact and order-independent.
class Polarity {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Polarity() = default;
  static constexpr Polarity from_micros(std::int64_t micros) { return Polarity(micros); }
  /// Rounds to the nearest millionth. Throws ValidationError outside [-1, 1].
  static Polarity from_double(double value);

  constexpr std::int64_t micros() const { return micros_; }
  double value() const { return static_cast<double>(micros_) / static_cast<double>(kScale); }

  constexpr auto operator<=>(const Polarity&) const = default;

 private:
  constexpr explicit Polarity(std::int64_t micros) : micros_(micros) {}
  std::int64_t micros_ = 0;
};

class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  explicit SentimentLexicon(std::map<std::string, Polarity> entries) : entries_(std::move(entries)) {}

  /// `term<TAB>polarity` per line, `#` comments. Duplicate terms: last one
  /// wins and a warning is appended. Throws ConfigError on an unreadable
  /// file and ValidationError (naming the line) on a bad polarity.
  static SentimentLexicon load(const std::filesystem::path& path,
                               std::vector<std::string>* warnings = nullptr);
  static SentimentLexicon parse(std::string_view text, const std::string& source_name,
                                std::vector<std::string>* warnings = nullptr);

  /// 0 for terms not in the lexicon.
  Polarity polarity(std::string_view term) const;
  bool contains(std::string_view term) const { return entries_.contains(std::string(term)); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, Polarity>& entries() const { return entries_; }

 private:
  std::map<std::string, Polarity> entries_;
};

inline double term_polarity(std::string_view term, const SentimentLexicon& lexicon) {
  return lexicon.polarity(term).value();
}

enum class Aggregate { kSum, kMean };

/// Sums (or averages) word polarities over the comment's lowercased words.
/// No stopword removal and no stemming, so lexicon keys are surface forms.
double comment_polarity(std::string_view text, const SentimentLexicon& lexicon,
                        Aggregate aggregate = Aggregate::kSum);

/// Corpus-observed lexicon terms split by sign.
struct SaDictionaries {
  std::map<std::string, Polarity> bonus;    // > 0
  std::map<std::string, Polarity> penalty;  // < 0

  /// 0 when the term is in neither group.
  Polarity lookup(std::string_view term) const;
  bool empty() const { return bonus.empty() && penalty.empty(); }

  /// `term<TAB>polarity` lines, bonus then penalty, each sorted by term.
  void save(const std::filesystem::path& path) const;
  static SaDictionaries load(const std::filesystem::path& path);
};

SaDictionaries build_sa_dictionaries(std::span<const std::string> comment_texts,
                                     const SentimentLexicon& lexicon);

/// Corpus-based lexicon growth: a non-seed word takes the co-occurrence
/// weighted mean polarity of the seed words sharing a comment with it, when
/// that mean has magnitude >= threshold. Seeds are never overwritten.
/// Words in `stopwords` and non-alphabetic words are never added.
SentimentLexicon expand_lexicon(const SentimentLexicon& seed,
                                std::span<const std::string> comment_texts, double threshold,
                                const textprep::Stopwords* stopwords = nullptr);

}  // namespace retrorank::sentiment

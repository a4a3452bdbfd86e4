// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace retrorank::textprep {

/// Ordered stems produced by the preprocessing pipeline.
using TermList = std::vector<std::string>;

/// Splits on every byte that is not an ASCII letter or digit. Case is kept.
std::vector<std::string> tokenize(std::string_view text);

/// Lowercases and strips anything non-alphanumeric; empty tokens are dropped.
std::vector<std::string> normalize(std::vector<std::string> tokens);

class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  /// One word per line. Throws ConfigError if the file cannot be read.
  static Stopwords load(const std::filesystem::path& path);

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stopwords& stopwords);

/// Porter (1980) stemmer, original algorithm. Tokens that are not purely
/// lowercase alphabetic are returned unchanged.
std::string stem(std::string_view token);

/// tokenize -> normalize -> remove_stopwords -> stem.
class Preprocessor {
 public:
  explicit Preprocessor(Stopwords stopwords) : stopwords_(std::move(stopwords)) {}

  TermList operator()(std::string_view text) const;
  const Stopwords& stopwords() const { return stopwords_; }

 private:
  Stopwords stopwords_;
};

/// Words as seen by the sentiment scorer: tokenized and lowercased only.
std::vector<std::string> surface_words(std::string_view text);

}  // namespace retrorank::textprep

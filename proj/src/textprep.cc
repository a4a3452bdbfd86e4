// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/textprep.h"

#include <fstream>

#include "retrorank/errors.h"

namespace retrorank::textprep {

namespace {

bool is_alnum_ascii(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower_ascii(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  const std::size_t n = text.size();
  while (start < n) {
    while (start < n && !is_alnum_ascii(static_cast<unsigned char>(text[start]))) ++start;
    std::size_t end = start;
    while (end < n && is_alnum_ascii(static_cast<unsigned char>(text[end]))) ++end;
    if (end > start) tokens.emplace_back(text.substr(start, end - start));
    start = end;
  }
  return tokens;
}

std::vector<std::string> normalize(std::vector<std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto& token : tokens) {
    std::string clean;
    clean.reserve(token.size());
    for (char c : token) {
      if (is_alnum_ascii(static_cast<unsigned char>(c))) clean.push_back(to_lower_ascii(c));
    }
    if (!clean.empty()) out.push_back(std::move(clean));
  }
  return out;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stopword file " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    words.insert(line);
  }
  return Stopwords(std::move(words));
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stopwords& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
  return tokens;
}

TermList Preprocessor::operator()(std::string_view text) const {
  auto tokens = remove_stopwords(normalize(tokenize(text)), stopwords_);
  for (auto& t : tokens) t = stem(t);
  return tokens;
}

std::vector<std::string> surface_words(std::string_view text) { return normalize(tokenize(text)); }

}  // namespace retrorank::textprep

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/sentiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "retrorank/errors.h"

namespace retrorank::sentiment {

Polarity Polarity::from_double(double value) {
  if (!std::isfinite(value) || value < -1.0 || value > 1.0) {
    throw ValidationError("polarity must lie in [-1, 1]");
  }
  return Polarity(std::llround(value * static_cast<double>(kScale)));
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses `term<TAB>polarity` lines into `out`; used for both the lexicon
// and persisted SA dictionaries.
void parse_tsv(std::string_view text, const std::string& source, std::map<std::string, Polarity>& out,
               std::vector<std::string>* warnings) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    line = strip(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const auto where = source + ":" + std::to_string(line_no);
    if (tab == std::string_view::npos) throw ValidationError(where + ": expected term<TAB>polarity");
    const std::string term(strip(line.substr(0, tab)));
    const auto value_text = strip(line.substr(tab + 1));
    if (term.empty()) throw ValidationError(where + ": empty term");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc() || ptr != value_text.data() + value_text.size()) {
      throw ValidationError(where + ": polarity '" + std::string(value_text) + "' is not a number");
    }
    if (!(value >= -1.0 && value <= 1.0)) {
      throw ValidationError(where + ": polarity " + std::string(value_text) + " outside [-1, 1]");
    }
    if (out.contains(term) && warnings) {
      warnings->push_back(where + ": duplicate term '" + term + "', last entry wins");
    }
    out[term] = Polarity::from_double(value);
  }
}

std::string format_polarity(Polarity p) {
  // Millionths print exactly with six decimals.
  const std::int64_t m = p.micros();
  const std::int64_t a = m < 0 ? -m : m;
  char frac[8];
  std::snprintf(frac, sizeof(frac), "%06lld", static_cast<long long>(a % Polarity::kScale));
  return std::string(m < 0 ? "-" : "") + std::to_string(a / Polarity::kScale) + "." + frac;
}

}  // namespace

SentimentLexicon SentimentLexicon::parse(std::string_view text, const std::string& source_name,
                                         std::vector<std::string>* warnings) {
  std::map<std::string, Polarity> entries;
  parse_tsv(text, source_name, entries, warnings);
  if (entries.empty()) throw ValidationError(source_name + ": lexicon is empty");
  return SentimentLexicon(std::move(entries));
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path,
                                        std::vector<std::string>* warnings) {
  return parse(read_file(path), path.string(), warnings);
}

Polarity SentimentLexicon::polarity(std::string_view term) const {
  auto it = entries_.find(std::string(term));
  return it == entries_.end() ? Polarity() : it->second;
}

double comment_polarity(std::string_view text, const SentimentLexicon& lexicon, Aggregate aggregate) {
  const auto words = textprep::surface_words(text);
  std::int64_t total = 0;
  for (const auto& w : words) total += lexicon.polarity(w).micros();
  const double sum = static_cast<double>(total) / static_cast<double>(Polarity::kScale);
  if (aggregate == Aggregate::kMean) {
    return words.empty() ? 0.0 : sum / static_cast<double>(words.size());
  }
  return sum;
}

Polarity SaDictionaries::lookup(std::string_view term) const {
  const std::string key(term);
  if (auto it = bonus.find(key); it != bonus.end()) return it->second;
  if (auto it = penalty.find(key); it != penalty.end()) return it->second;
  return Polarity();
}

void SaDictionaries::save(const std::filesystem::path& path) const {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  out << "# bonus\n";
  for (const auto& [term, p] : bonus) out << term << '\t' << format_polarity(p) << '\n';
  out << "# penalty\n";
  for (const auto& [term, p] : penalty) out << term << '\t' << format_polarity(p) << '\n';
  if (!out) throw StorageError("write failed for " + path.string());
}

SaDictionaries SaDictionaries::load(const std::filesystem::path& path) {
  std::map<std::string, Polarity> all;
  parse_tsv(read_file(path), path.string(), all, nullptr);
  SaDictionaries dicts;
  for (auto& [term, p] : all) {
    if (p.micros() > 0) {
      dicts.bonus.emplace(term, p);
    } else if (p.micros() < 0) {
      dicts.penalty.emplace(term, p);
    }
  }
  return dicts;
}

SaDictionaries build_sa_dictionaries(std::span<const std::string> comment_texts,
                                     const SentimentLexicon& lexicon) {
  SaDictionaries dicts;
  for (const auto& text : comment_texts) {
    for (const auto& w : textprep::surface_words(text)) {
      const Polarity p = lexicon.polarity(w);
      if (p.micros() > 0) {
        dicts.bonus.emplace(w, p);
      } else if (p.micros() < 0) {
        dicts.penalty.emplace(w, p);
      }
    }
  }
  return dicts;
}

SentimentLexicon expand_lexicon(const SentimentLexicon& seed, std::span<const std::string> comment_texts,
                                double threshold, const textprep::Stopwords* stopwords) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("expansion threshold must lie in (0, 1]");
  }
  // candidate -> (sum of co-occurrence * seed polarity in micros, co-occurrence count)
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> acc;
  for (const auto& text : comment_texts) {
    const auto words = textprep::surface_words(text);
    const std::set<std::string> distinct(words.begin(), words.end());
    std::int64_t seed_sum = 0;
    std::int64_t seed_count = 0;
    for (const auto& w : distinct) {
      if (seed.contains(w)) {
        seed_sum += seed.polarity(w).micros();
        ++seed_count;
      }
    }
    if (seed_count == 0) continue;
    for (const auto& w : distinct) {
      if (seed.contains(w)) continue;
      if (stopwords && stopwords->contains(w)) continue;
      if (!std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; })) continue;
      auto& [sum, count] = acc[w];
      sum += seed_sum;
      count += seed_count;
    }
  }

  auto entries = seed.entries();
  for (const auto& [term, sc] : acc) {
    const double mean = static_cast<double>(sc.first) /
                        (static_cast<double>(sc.second) * static_cast<double>(Polarity::kScale));
    if (std::abs(mean) >= threshold) entries.emplace(term, Polarity::from_double(mean));
  }
  return SentimentLexicon(std::move(entries));
}

}  // namespace retrorank::sentiment

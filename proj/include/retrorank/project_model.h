// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "retrorank/corpus.h"
#include "retrorank/ranker.h"
#include "retrorank/sentiment.h"
#include "retrorank/textprep.h"
#include "retrorank/textrank.h"
#include "retrorank/vsm.h"

namespace retrorank {

/// Bundled stopword list and sentiment lexicon.
struct Resources {
  textprep::Stopwords stopwords;
  sentiment::SentimentLexicon lexicon;

  /// Directory from $RETRORANK_RESOURCES, else the compiled-in data dir.
  static std::filesystem::path default_dir();
  /// Reads `stopwords.txt` and `lexicon.tsv` from `dir`.
  static Resources load(const std::filesystem::path& dir = default_dir());
};

struct BuildOptions {
  vsm::TfIdfScheme scheme = vsm::TfIdfScheme::kRawCount;
  std::size_t cooccurrence_window = 0;  // 0 = whole comment
  textrank::TextRankParams textrank;
  std::size_t tr_top_n = 1000;
  /// When > 0, the lexicon is grown from resolved comments before the SA
  /// dictionaries are built.
  double lexicon_expansion_threshold = 0.0;
};

struct BuildReport {
  std::size_t comments = 0;
  std::size_t vocabulary = 0;
  std::size_t bonus_terms = 0;
  std::size_t penalty_terms = 0;
  std::size_t graph_vertices = 0;
  std::size_t graph_edges = 0;
  int textrank_iterations = 0;
  bool textrank_converged = false;
  std::size_t tr_entries = 0;
};

/// Every artifact needed to answer queries for one project. Immutable
/// once built or loaded; rank() is safe to call concurrently.
class ProjectModel {
 public:
  /// Builds from the store's resolved comments. Throws IndexError when
  /// the store holds no resolved comment.
  static ProjectModel build(const corpus::BugStore& store, const Resources& resources,
                            const BuildOptions& options = {}, BuildReport* report = nullptr);

  /// Reads index.bin, sadict.tsv and trdict.tsv next to bugs.ndrec.
  /// Throws MissingStageError naming the stage that has not been run.
  static ProjectModel load(const std::filesystem::path& data_dir, const std::string& project,
                           const textprep::Stopwords& stopwords);

  void save(const std::filesystem::path& data_dir) const;

  const std::string& project() const { return project_; }
  const vsm::TfIdfIndex& index() const { return index_; }
  const sentiment::SaDictionaries& sa_dictionaries() const { return sa_; }
  const textrank::TrDictionary& tr_dictionary() const { return tr_; }
  const textprep::Preprocessor& preprocessor() const { return prep_; }

  ranker::RankResponse rank(std::string_view query_text, const ranker::RankConfig& cfg) const;

  /// Text of an indexed comment, or nullptr.
  const std::string* comment_text(const CommentRef& ref) const;

 private:
  ProjectModel(std::string project, textprep::Preprocessor prep) : project_(std::move(project)), prep_(std::move(prep)) {}
  void attach_comments(const std::vector<corpus::ResolvedComment>& comments);

  struct IndexedComment {
    std::string text;
    textprep::TermList terms;
  };

  std::string project_;
  textprep::Preprocessor prep_;
  vsm::TfIdfIndex index_;
  sentiment::SaDictionaries sa_;
  textrank::TrDictionary tr_;
  std::vector<IndexedComment> comments_;  // aligned with index_.refs()
};

}  // namespace retrorank

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/project_model.h"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include "retrorank/errors.h"

namespace retrorank {

std::filesystem::path Resources::default_dir() {
  if (const char* env = std::getenv("RETRORANK_RESOURCES"); env && *env) return env;
  return RETRORANK_RESOURCE_DIR;
}

Resources Resources::load(const std::filesystem::path& dir) {
  Resources r;
  r.stopwords = textprep::Stopwords::load(dir / "stopwords.txt");
  r.lexicon = sentiment::SentimentLexicon::load(dir / "lexicon.tsv");
  return r;
}

namespace {

std::filesystem::path artifact(const std::filesystem::path& data_dir, const std::string& project,
                               const char* name) {
  return data_dir / project / name;
}

}  // namespace

ProjectModel ProjectModel::build(const corpus::BugStore& store, const Resources& resources,
                                 const BuildOptions& options, BuildReport* report) {
  const auto comments = store.resolved_comments();
  if (comments.empty()) {
    throw IndexError("project '" + store.project() + "' has no resolved comments to index");
  }

  ProjectModel model(store.project(), textprep::Preprocessor(resources.stopwords));

  std::vector<vsm::Document> docs;
  std::vector<textprep::TermList> term_lists;
  std::vector<std::string> texts;
  docs.reserve(comments.size());
  for (const auto& c : comments) {
    auto terms = model.prep_(c.comment.text);
    term_lists.push_back(terms);
    texts.push_back(c.comment.text);
    docs.push_back({c.ref, std::move(terms)});
  }

  model.index_ = vsm::TfIdfIndex::build(docs, options.scheme);

  const sentiment::SentimentLexicon lexicon =
      options.lexicon_expansion_threshold > 0.0
          ? sentiment::expand_lexicon(resources.lexicon, texts, options.lexicon_expansion_threshold,
                                      &resources.stopwords)
          : resources.lexicon;
  model.sa_ = sentiment::build_sa_dictionaries(texts, lexicon);

  const auto graph = textrank::TermGraph::build(term_lists, options.cooccurrence_window);
  const auto tr = textrank::textrank_scores(graph, options.textrank);
  if (graph.vertex_count() > 0) {
    model.tr_ = textrank::TrDictionary::build(graph, tr.scores, options.tr_top_n);
  }

  model.attach_comments(comments);

  if (report) {
    report->comments = comments.size();
    report->vocabulary = model.index_.vocabulary_size();
    report->bonus_terms = model.sa_.bonus.size();
    report->penalty_terms = model.sa_.penalty.size();
    report->graph_vertices = graph.vertex_count();
    report->graph_edges = graph.edge_count();
    report->textrank_iterations = tr.iterations;
    report->textrank_converged = tr.converged;
    report->tr_entries = model.tr_.size();
  }
  return model;
}

void ProjectModel::attach_comments(const std::vector<corpus::ResolvedComment>& comments) {
  std::unordered_map<CommentRef, const corpus::Comment*, CommentRefHash> by_ref;
  for (const auto& c : comments) by_ref.emplace(c.ref, &c.comment);
  comments_.clear();
  comments_.reserve(index_.doc_count());
  for (const auto& ref : index_.refs()) {
    auto it = by_ref.find(ref);
    if (it == by_ref.end()) {
      throw IndexError("index references " + ref.to_string() + " which is not in the bug store");
    }
    comments_.push_back({it->second->text, prep_(it->second->text)});
  }
}

void ProjectModel::save(const std::filesystem::path& data_dir) const {
  index_.save(artifact(data_dir, project_, "index.bin"));
  sa_.save(artifact(data_dir, project_, "sadict.tsv"));
  tr_.save(artifact(data_dir, project_, "trdict.tsv"));
}

ProjectModel ProjectModel::load(const std::filesystem::path& data_dir, const std::string& project,
                                const textprep::Stopwords& stopwords) {
  const corpus::BugStore store(data_dir, project);
  if (!store.exists_on_disk()) {
    throw MissingStageError("project '" + project + "' not ingested (run `retrorank ingest` first)");
  }
  for (const char* name : {"index.bin", "sadict.tsv", "trdict.tsv"}) {
    if (!std::filesystem::exists(artifact(data_dir, project, name))) {
      throw MissingStageError("index not built for project '" + project +
                              "' (run `retrorank build` first; missing " + name + ")");
    }
  }
  ProjectModel model(project, textprep::Preprocessor(stopwords));
  model.index_ = vsm::TfIdfIndex::load(artifact(data_dir, project, "index.bin"));
  model.sa_ = sentiment::SaDictionaries::load(artifact(data_dir, project, "sadict.tsv"));
  model.tr_ = textrank::TrDictionary::load(artifact(data_dir, project, "trdict.tsv"));
  model.attach_comments(store.all_comments());
  return model;
}

const std::string* ProjectModel::comment_text(const CommentRef& ref) const {
  const auto refs = index_.refs();
  auto it = std::lower_bound(refs.begin(), refs.end(), ref);
  if (it == refs.end() || *it != ref) return nullptr;
  return &comments_[static_cast<std::size_t>(it - refs.begin())].text;
}

ranker::RankResponse ProjectModel::rank(std::string_view query_text, const ranker::RankConfig& cfg) const {
  cfg.validate();
  ranker::RankResponse response;
  const auto outcome = index_.rank(prep_(query_text));
  if (outcome.no_match) {
    response.no_match = true;
    return response;
  }

  const auto refs = index_.refs();
  std::vector<ranker::RankedResult> scored;
  scored.reserve(outcome.results.size());
  for (const auto& candidate : outcome.results) {
    const auto pos = static_cast<std::size_t>(std::lower_bound(refs.begin(), refs.end(), candidate.ref) - refs.begin());
    const auto& comment = comments_[pos];
    ranker::RankedResult r;
    r.ref = candidate.ref;
    r.vsm_score = candidate.score;
    r.sa_boost = ranker::uses_sa(cfg.mode) ? ranker::sa_boost(comment.text, sa_) : 0.0;
    r.tr_boost = ranker::uses_tr(cfg.mode) ? ranker::tr_boost(comment.terms, tr_) : 0.0;
    r.final_score = ranker::combined_score(r.vsm_score, r.sa_boost, r.tr_boost, cfg);
    scored.push_back(std::move(r));
  }
  std::stable_sort(scored.begin(), scored.end(), [](const ranker::RankedResult& a, const ranker::RankedResult& b) {
    if (a.final_score != b.final_score) return a.final_score > b.final_score;
    return a.ref < b.ref;
  });
  if (scored.size() > cfg.top_k) scored.resize(cfg.top_k);
  for (std::size_t i = 0; i < scored.size(); ++i) {
    scored[i].rank = static_cast<int>(i + 1);
    const auto pos = static_cast<std::size_t>(std::lower_bound(refs.begin(), refs.end(), scored[i].ref) - refs.begin());
    scored[i].snippet = ranker::make_snippet(comments_[pos].text);
  }
  response.results = std::move(scored);
  return response;
}

}  // namespace retrorank

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero
// when any criterion fails.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "retrorank/corpus.h"
#include "retrorank/distributions.h"
#include "retrorank/evalkit.h"
#include "retrorank/project_model.h"
#include "retrorank/sentiment.h"
#include "retrorank/service.h"
#include "retrorank/textprep.h"
#include "retrorank/textrank.h"
#include "retrorank/vsm.h"

namespace fs = std::filesystem;
using namespace retrorank;

namespace {

const fs::path kFixtures = RETRORANK_FIXTURES_DIR;
const fs::path kTestData = RETRORANK_TEST_DATA_DIR;

/// Collects the failed sub-checks of one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double actual, double expected, double tol, const std::string& what) {
    expect(std::abs(actual - expected) <= tol, fmt::format("{} = {:.6g}, expected {:.6g} +/- {:g}", what, actual,
                                                           expected, tol));
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / fmt::format("retrorank-acceptance-{}-{}", rd(), rd());
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const Resources& resources() {
  static const Resources r = Resources::load(Resources::default_dir());
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ranker::Mode kModes[] = {ranker::Mode::kVsm, ranker::Mode::kVsmSa, ranker::Mode::kVsmTr, ranker::Mode::kVsmSaTr};

void mean_positions(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = evalkit::load_position_table(kFixtures / "eval1_positions.tsv");
  const double expected[] = {9.1, 3.4, 3.7, 1.8};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto records = evalkit::records_for_mode(rows, kModes[i]);
    c.near(evalkit::mean_position(records), expected[i], 0.05,
           fmt::format("mean position {}", ranker::mode_label(kModes[i])));
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(elapsed < 1.0, fmt::format("runtime {:.3f} s", elapsed));
}

void effect_sizes(Checker& c) {
  const evalkit::SampleMoments vsm{25, 9.1, 5.0};
  const evalkit::SampleMoments vsm_sa{25, 3.4, 1.9};
  const evalkit::SampleMoments vsm_tr{25, 3.7, 2.2};
  const evalkit::SampleMoments vsm_sa_tr{25, 1.8, 1.1};
  c.near(evalkit::cohens_d(vsm_sa_tr, vsm_sa), 1.0307, 0.001, "H1 Cohen's d");
  c.near(evalkit::cohens_d(vsm, vsm_tr), 1.3980, 0.001, "H3 Cohen's d");
  c.near(evalkit::cohens_d(vsm, vsm_sa), 1.5071, 0.001, "H4 Cohen's d");
  c.near(evalkit::cohens_d(vsm, vsm_sa_tr), 2.0165, 0.001, "H5 Cohen's d");
}

void mrr_map(Checker& c) {
  const auto rows = evalkit::load_position_table(kFixtures / "eval1_positions.tsv");
  const double mrr[] = {0.173, 0.373, 0.289, 0.651};
  const double map[] = {0.192, 0.428, 0.358, 0.741};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto records = evalkit::records_for_mode(rows, kModes[i]);
    const auto label = ranker::mode_label(kModes[i]);
    c.near(evalkit::mrr_at_k(records, 10), mrr[i], 0.03, fmt::format("MRR@10 {}", label));
    c.near(evalkit::map_at_k(records, 10), map[i], 0.05, fmt::format("MAP@10 {}", label));
  }
}

void sentiment_anchors(Checker& c) {
  const double fixed = sentiment::comment_polarity("This bug is fixed", resources().lexicon);
  const double unresolved = sentiment::comment_polarity("This bug is unresolved", resources().lexicon);
  c.expect(fixed == 0.85, fmt::format("polarity(\"This bug is fixed\") = {:.17g}", fixed));
  c.expect(unresolved == -0.75, fmt::format("polarity(\"This bug is unresolved\") = {:.17g}", unresolved));
}

std::vector<textprep::TermList> resolved_terms(const fs::path& xml_dir, const std::string& project) {
  TempDir tmp;
  service::ingest(xml_dir, tmp.path(), project);
  const textprep::Preprocessor prep(resources().stopwords);
  std::vector<textprep::TermList> out;
  for (const auto& rc : corpus::BugStore(tmp.path(), project).resolved_comments()) out.push_back(prep(rc.comment.text));
  return out;
}

void textrank_fixed_points(Checker& c) {
  using textrank::TermGraph;
  const auto isolated = textrank::textrank_scores(TermGraph::from_edges({"a"}, {}));
  c.expect(isolated.scores.size() == 1 && isolated.scores[0] == 1.0 - 0.85, "isolated vertex scores 0.15");

  const auto pair = textrank::textrank_scores(TermGraph::from_edges({"a", "b"}, {{0, 1, 0.4}}));
  for (double s : pair.scores) c.near(s, 1.0, 1e-4, "two-node score");
  const auto triangle =
      textrank::textrank_scores(TermGraph::from_edges({"a", "b", "c"}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  for (double s : triangle.scores) c.near(s, 1.0, 1e-4, "triangle score");

  const std::pair<const char*, const char*> graphs[] = {
      {"minicorpus/xml", "mini"}, {"gcc/xml", "gcc"}, {"libreoffice/xml", "libreoffice"}};
  for (const auto& [dir, project] : graphs) {
    const auto g = TermGraph::build(resolved_terms(kFixtures / dir, project));
    const auto r = textrank::textrank_scores(g, {0.85, 1e-4, 100});
    c.expect(r.converged && r.iterations <= 100, fmt::format("{} graph converges within 100 sweeps", project));
    const auto next = textrank::textrank_sweep(g, r.scores, 0.85);
    double residual = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) residual = std::max(residual, std::abs(next[i] - r.scores[i]));
    c.expect(residual < 1e-4, fmt::format("{} graph residual {:.3g}", project, residual));
  }
}

// Dense brute-force TF-IDF and cosine ranking; returns (doc index, score).
std::vector<std::pair<std::size_t, double>> dense_rank(const std::vector<textprep::TermList>& docs,
                                                       const textprep::TermList& query) {
  std::set<std::string> vocab_set;
  for (const auto& d : docs) vocab_set.insert(d.begin(), d.end());
  const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  std::vector<double> idf;
  for (const auto& t : vocab) {
    double df = 0;
    for (const auto& d : docs) df += std::find(d.begin(), d.end(), t) != d.end() ? 1 : 0;
    idf.push_back(std::log(static_cast<double>(docs.size()) / df));
  }
  const auto weigh = [&](const textprep::TermList& terms) {
    std::vector<double> row(vocab.size());
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      row[j] = static_cast<double>(std::count(terms.begin(), terms.end(), vocab[j])) * idf[j];
    }
    return row;
  };
  const auto q = weigh(query);
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto d = weigh(docs[i]);
    double dot = 0, nd = 0, nq = 0;
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      dot += d[j] * q[j];
      nd += d[j] * d[j];
      nq += q[j] * q[j];
    }
    if (nd == 0 || nq == 0) continue;
    const double s = std::clamp(dot / (std::sqrt(nd) * std::sqrt(nq)), 0.0, 1.0);
    if (s > 0) out.emplace_back(i, s);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

void vsm_oracle(Checker& c) {
  std::mt19937_64 rng(20260101);
  const std::vector<std::string> alphabet{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  std::uniform_int_distribution<int> doc_count(1, 20);
  std::uniform_int_distribution<int> doc_len(1, 10);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  int mismatched = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<textprep::TermList> docs(static_cast<std::size_t>(doc_count(rng)));
    for (auto& d : docs) {
      for (int i = doc_len(rng); i > 0; --i) d.push_back(alphabet[pick(rng)]);
    }
    const textprep::TermList query{alphabet[pick(rng)], alphabet[pick(rng)]};
    std::vector<vsm::Document> documents;
    for (std::size_t i = 0; i < docs.size(); ++i) documents.push_back({{"p", static_cast<std::int64_t>(i), 0}, docs[i]});
    const auto outcome = vsm::TfIdfIndex::build(documents).rank(query);
    const auto expected = dense_rank(docs, query);
    bool same = outcome.results.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) {
      same = outcome.results[i].ref.bug_id == static_cast<std::int64_t>(expected[i].first);
    }
    if (!same) ++mismatched;
  }
  c.expect(mismatched == 0, fmt::format("{} of 100 random corpora ranked differently from the oracle", mismatched));

  std::uniform_real_distribution<double> weight(0.0, 5.0);
  std::uniform_real_distribution<double> factor(0.01, 100.0);
  double worst_symmetry = 0.0;
  double worst_scale = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<vsm::TermId, double>> ea;
    std::vector<std::pair<vsm::TermId, double>> eb;
    for (vsm::TermId id = 0; id < 10; ++id) {
      if (rng() % 2) ea.emplace_back(id, weight(rng));
      if (rng() % 2) eb.emplace_back(id, weight(rng));
    }
    const vsm::TermVector a(ea);
    const vsm::TermVector b(eb);
    const double ab = vsm::cosine_similarity(a, b);
    worst_symmetry = std::max(worst_symmetry, std::abs(ab - vsm::cosine_similarity(b, a)));
    worst_scale = std::max(worst_scale, std::abs(ab - vsm::cosine_similarity(a.scaled(factor(rng)), b)));
  }
  c.expect(worst_symmetry <= 1e-9, fmt::format("cosine symmetry error {:.3g}", worst_symmetry));
  c.expect(worst_scale <= 1e-9, fmt::format("cosine scale error {:.3g}", worst_scale));
}

void planted_improvement(Checker& c) {
  TempDir tmp;
  service::ingest(kFixtures / "minicorpus/xml", tmp.path(), "mini");
  const auto model = ProjectModel::build(corpus::BugStore(tmp.path(), "mini"), resources());
  const std::string query = "segfault in register allocator spill code";
  const CommentRef planted{"mini", 1030, 2};
  const auto position = [&](ranker::Mode mode) {
    ranker::RankConfig cfg;
    cfg.mode = mode;
    cfg.top_k = 1000;
    const auto res = model.rank(query, cfg);
    for (const auto& r : res.results) {
      if (r.ref == planted) return r.rank;
    }
    return 0;
  };
  const int vsm_pos = position(ranker::Mode::kVsm);
  const int full_pos = position(ranker::Mode::kVsmSaTr);
  c.expect(vsm_pos > 0 && full_pos > 0 && full_pos < vsm_pos,
           fmt::format("planted comment at VSM rank {} and VSM+SA+TR rank {}", vsm_pos, full_pos));

  ranker::RankConfig cfg;
  cfg.mode = ranker::Mode::kVsm;
  cfg.top_k = 1000;
  const auto ranked = model.rank(query, cfg);
  const auto bare = model.index().rank(model.preprocessor()(query));
  bool same = ranked.results.size() == bare.results.size();
  for (std::size_t i = 0; same && i < bare.results.size(); ++i) {
    same = ranked.results[i].ref == bare.results[i].ref && ranked.results[i].final_score == bare.results[i].score;
  }
  c.expect(same, "VSM mode ordering equals the bare index ordering");
}

void statistics_oracles(Checker& c) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(10.0, 4.0);
  std::uniform_int_distribution<int> size(2, 40);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(size(rng));
    std::vector<double> b(size(rng));
    for (auto& x : a) x = noise(rng);
    for (auto& x : b) x = noise(rng) + 1.5;
    const auto moments = [](const std::vector<double>& v) {
      const double n = static_cast<double>(v.size());
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
      double ss = 0;
      for (double x : v) ss += (x - mean) * (x - mean);
      return evalkit::SampleMoments{n, mean, std::sqrt(ss / (n - 1))};
    };
    const std::vector<std::vector<double>> groups{a, b};
    const double f = evalkit::anova_oneway(groups).f;
    const double t = evalkit::students_t(moments(a), moments(b)).t;
    worst = std::max(worst, std::abs(f - t * t) / std::max(1.0, f));
  }
  c.expect(worst <= 1e-6, fmt::format("F = t^2 relative error {:.3g}", worst));

  struct TRow {
    double p, df, t;
  };
  for (const auto& row : {TRow{0.975, 1, 12.7062}, TRow{0.975, 10, 2.2281}, TRow{0.975, 24, 2.0639},
                          TRow{0.975, 48, 2.0106}, TRow{0.95, 5, 2.0150}, TRow{0.995, 20, 2.8453}}) {
    c.near(evalkit::student_t_cdf(row.t, row.df), row.p, 1e-4, fmt::format("t cdf({}, df {})", row.t, row.df));
    c.near(evalkit::student_t_two_tailed_p(row.t, row.df), 2 * (1 - row.p), 1e-4,
           fmt::format("t two-tailed p({}, df {})", row.t, row.df));
  }
  struct FRow {
    double p, d1, d2, f;
  };
  for (const auto& row : {FRow{0.95, 1, 10, 4.9646}, FRow{0.95, 2, 10, 4.1028}, FRow{0.95, 1, 48, 4.0427},
                          FRow{0.95, 3, 20, 3.0984}, FRow{0.99, 2, 20, 5.8489}}) {
    c.near(evalkit::f_upper_p(row.f, row.d1, row.d2), 1 - row.p, 1e-4,
           fmt::format("F upper p({}, {}, {})", row.f, row.d1, row.d2));
  }
}

void round_trips(Checker& c) {
  TempDir tmp;
  service::ingest(kFixtures / "minicorpus/xml", tmp.path(), "mini");
  std::vector<corpus::BugReport> parsed;
  for (const auto& entry : fs::directory_iterator(kFixtures / "minicorpus/xml")) {
    const auto result = corpus::parse_bugzilla_xml(read_file(entry.path()), "mini");
    parsed.insert(parsed.end(), result.bugs.begin(), result.bugs.end());
  }
  std::sort(parsed.begin(), parsed.end(), [](const auto& a, const auto& b) { return a.bug_id < b.bug_id; });
  auto loaded = corpus::BugStore(tmp.path(), "mini").all_bugs();
  std::sort(loaded.begin(), loaded.end(), [](const auto& a, const auto& b) { return a.bug_id < b.bug_id; });
  c.expect(parsed.size() == 30, fmt::format("parsed {} mini-corpus bugs", parsed.size()));
  c.expect(parsed == loaded, "mini-corpus parse, store, load is lossless");

  std::istringstream voc(read_file(kTestData / "porter/voc.txt"));
  std::istringstream out(read_file(kTestData / "porter/output.txt"));
  std::size_t total = 0;
  std::size_t agree = 0;
  std::string word;
  std::string expected;
  while (std::getline(voc, word) && std::getline(out, expected)) {
    ++total;
    if (textprep::stem(word) == expected) ++agree;
  }
  c.expect(total > 0 && agree == total, fmt::format("Porter vocabulary {}/{} agree", agree, total));
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Checker&)>> criteria[] = {
      {"Table reproduction: mean positions", mean_positions},
      {"Effect sizes", effect_sizes},
      {"MRR/MAP", mrr_map},
      {"Sentiment anchors", sentiment_anchors},
      {"TextRank fixed points", textrank_fixed_points},
      {"VSM oracle equivalence", vsm_oracle},
      {"End-to-end improvement property", planted_improvement},
      {"Statistics oracles", statistics_oracles},
      {"Round-trips", round_trips},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Checker c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    if (c.failures().empty()) {
      fmt::print("PASS  {}\n", name);
    } else {
      ++failed;
      fmt::print("FAIL  {}\n", name);
      for (const auto& f : c.failures()) fmt::print("      {}\n", f);
    }
  }
  fmt::print("{} of {} criteria passed\n", std::size(criteria) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}

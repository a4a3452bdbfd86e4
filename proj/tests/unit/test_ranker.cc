// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "retrorank/corpus.h"
#include "retrorank/errors.h"
#include "retrorank/project_model.h"
#include "retrorank/ranker.h"
#include "retrorank/service.h"
#include "test_support.h"

using namespace retrorank;
using namespace retrorank::ranker;
using retrorank::testing::TempDir;

namespace {

struct BuiltProject {
  TempDir dir;
  std::unique_ptr<ProjectModel> model;
};

std::unique_ptr<BuiltProject> build_project(const std::string& fixture, const std::string& project) {
  auto out = std::make_unique<BuiltProject>();
  service::ingest(retrorank::testing::fixtures_dir() / fixture, out->dir.path(), project);
  const corpus::BugStore store(out->dir.path(), project);
  out->model = std::make_unique<ProjectModel>(ProjectModel::build(store, retrorank::testing::shipped_resources()));
  return out;
}

const ProjectModel& mini() {
  static const auto built = build_project("minicorpus/xml", "mini");
  return *built->model;
}

const ProjectModel& libreoffice() {
  static const auto built = build_project("libreoffice/xml", "libreoffice");
  return *built->model;
}

RankConfig config(Mode mode, std::size_t top_k = 10) {
  RankConfig cfg;
  cfg.mode = mode;
  cfg.top_k = top_k;
  return cfg;
}

sentiment::SaDictionaries dicts_from(const std::vector<std::string>& texts) {
  return sentiment::build_sa_dictionaries(texts, retrorank::testing::shipped_resources().lexicon);
}

const CommentRef kPlanted{"mini", 1030, 2};
const CommentRef kDecoy{"mini", 1030, 1};
const std::string kPlantedQuery = "segfault in register allocator spill code";

}  // namespace

TEST_CASE("mode names round-trip") {
  for (Mode m : kAllModes) CHECK(parse_mode(mode_name(m)) == m);
  CHECK_FALSE(parse_mode("bm25").has_value());
  CHECK(mode_label(Mode::kVsmSaTr) == "VSM+SA+TR");
  CHECK(parse_combine("add") == Combine::kAdd);
  CHECK_FALSE(parse_combine("max").has_value());
}

TEST_CASE("config validation") {
  RankConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.lambda_sa = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = RankConfig{};
  cfg.top_k = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("SA boost examples") {
  const auto dicts = dicts_from({"fixed", "unresolved"});
  CHECK(sa_boost("", dicts) == 0.5);
  CHECK(sa_boost("compiler", dicts) == 0.5);
  CHECK(sa_boost("fixed", dicts) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(sa_boost("unresolved", dicts) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(sa_boost("fixed unresolved", dicts) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sa_boost("fixed code", dicts) == doctest::Approx((0.4 + 1.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("SA boost stays within [0, 1]") {
  const auto dicts = dicts_from({"fixed resolved works great", "crash unresolved broken"});
  for (const char* text : {"fixed fixed fixed", "crash broken unresolved", "works", "x"}) {
    const double b = sa_boost(text, dicts);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
  }
}

TEST_CASE("TR boost examples") {
  const auto dict = textrank::TrDictionary::from_scores({{"crash", 2.0}, {"fix", 1.0}}, 10);
  CHECK(tr_boost({"crash"}, dict) == 1.0);
  CHECK(tr_boost({"unknown"}, dict) == 0.0);
  CHECK(tr_boost({}, dict) == 0.0);
  CHECK(tr_boost({"crash", "unknown"}, dict) == 0.5);
  CHECK(tr_boost({"crash", "crash", "unknown"}, dict) == 0.5);
  CHECK(tr_boost({"fix"}, dict) == 0.5);
  CHECK(tr_boost({"crash"}, textrank::TrDictionary{}) == 0.0);
}

TEST_CASE("combined score examples") {
  RankConfig cfg;
  CHECK(combined_score(0.5, 0.9, 0.5, config(Mode::kVsm)) == 0.5);
  CHECK(combined_score(0.5, 0.9, 0.5, config(Mode::kVsmSa)) == doctest::Approx(0.5 * 1.9));
  CHECK(combined_score(0.5, 0.9, 0.5, config(Mode::kVsmTr)) == doctest::Approx(0.5 * 1.5));
  CHECK(combined_score(0.5, 0.9, 0.5, cfg) == doctest::Approx(0.5 * 2.4));
  CHECK(combined_score(0.5, 0.4, 0.3, cfg) == doctest::Approx(0.5 * 1.7));
  cfg.combine = Combine::kAdd;
  CHECK(combined_score(0.5, 0.4, 0.3, cfg) == doctest::Approx(1.2));
  cfg.combine = Combine::kMultiply;
  cfg.lambda_sa = 0.0;
  cfg.lambda_tr = 0.0;
  CHECK(combined_score(0.37, 0.9, 0.8, cfg) == 0.37);
  CHECK(combined_score(0.0, 0.9, 0.8, RankConfig{}) == 0.0);
}

TEST_CASE("combined score is monotone in each boost") {
  const RankConfig cfg;
  for (double vsm : {0.01, 0.3, 1.0}) {
    for (double x = 0.0; x < 1.0; x += 0.125) {
      CHECK(combined_score(vsm, x + 0.125, 0.3, cfg) >= combined_score(vsm, x, 0.3, cfg));
      CHECK(combined_score(vsm, 0.3, x + 0.125, cfg) >= combined_score(vsm, 0.3, x, cfg));
    }
  }
}

TEST_CASE("snippets are cut on code points") {
  CHECK(make_snippet("short") == "short");
  CHECK(make_snippet(std::string(300, 'a')).size() == 200);
  std::string accented;
  for (int i = 0; i < 250; ++i) accented += "\xc3\xa9";
  CHECK(make_snippet(accented) == accented.substr(0, 400));
  CHECK(make_snippet("caf\xc3\xa9", 4) == "caf\xc3\xa9");
  CHECK(make_snippet("caf\xc3\xa9", 3) == "caf");
}

TEST_CASE("VSM mode reproduces the plain cosine ordering") {
  const auto& model = mini();
  for (const char* q : {kPlantedQuery.c_str(), "vectorizer internal compiler error", "warning", "fixed"}) {
    CAPTURE(q);
    const auto ranked = model.rank(q, config(Mode::kVsm, 1000));
    const auto plain = model.index().rank(model.preprocessor()(q));
    REQUIRE(ranked.results.size() == plain.results.size());
    for (std::size_t i = 0; i < plain.results.size(); ++i) {
      CHECK(ranked.results[i].ref == plain.results[i].ref);
      CHECK(ranked.results[i].final_score == plain.results[i].score);
      CHECK(ranked.results[i].sa_boost == 0.0);
      CHECK(ranked.results[i].tr_boost == 0.0);
      CHECK(ranked.results[i].rank == static_cast<int>(i + 1));
    }
  }
}

TEST_CASE("planted pair: sentiment lifts the fixed comment above the unresolved one") {
  const auto& model = mini();
  const auto vsm = model.rank(kPlantedQuery, config(Mode::kVsm));
  REQUIRE(vsm.results.size() >= 2);
  CHECK(vsm.results[0].vsm_score == vsm.results[1].vsm_score);
  CHECK(vsm.results[0].ref == kDecoy);

  const auto sa = model.rank(kPlantedQuery, config(Mode::kVsmSa));
  REQUIRE_FALSE(sa.results.empty());
  CHECK(sa.results[0].ref == kPlanted);
  CHECK(sa.results[0].sa_boost > 0.5);

  const auto full = model.rank(kPlantedQuery, config(Mode::kVsmSaTr));
  REQUIRE_FALSE(full.results.empty());
  CHECK(full.results[0].ref == kPlanted);
}

TEST_CASE("gating: a zero cosine stays out of the list whatever the boosts") {
  const auto& model = mini();
  const auto full = model.rank("fixed", config(Mode::kVsmSaTr, 1000));
  const auto plain = model.rank("fixed", config(Mode::kVsm, 1000));
  CHECK(full.results.size() == plain.results.size());
  for (const auto& r : full.results) CHECK(r.vsm_score > 0.0);
}

TEST_CASE("zero lambdas degenerate to VSM") {
  const auto& model = mini();
  RankConfig cfg = config(Mode::kVsmSaTr, 1000);
  cfg.lambda_sa = 0.0;
  cfg.lambda_tr = 0.0;
  const auto a = model.rank(kPlantedQuery, cfg);
  const auto b = model.rank(kPlantedQuery, config(Mode::kVsm, 1000));
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].ref == b.results[i].ref);
    CHECK(a.results[i].final_score == b.results[i].final_score);
  }
}

TEST_CASE("ranking is deterministic and sorted") {
  const auto& model = mini();
  const auto a = model.rank("register allocator reload crash", config(Mode::kVsmSaTr, 50));
  const auto b = model.rank("register allocator reload crash", config(Mode::kVsmSaTr, 50));
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].ref == b.results[i].ref);
    CHECK(a.results[i].final_score == b.results[i].final_score);
    CHECK(a.results[i].snippet == b.results[i].snippet);
    if (i > 0) {
      const auto& prev = a.results[i - 1];
      const auto& cur = a.results[i];
      CHECK((prev.final_score > cur.final_score || (prev.final_score == cur.final_score && prev.ref < cur.ref)));
    }
  }
}

TEST_CASE("top_k truncates and no-match is reported") {
  const auto& model = mini();
  CHECK(model.rank("compiler", config(Mode::kVsm, 3)).results.size() <= 3);
  const auto none = model.rank("the and of", config(Mode::kVsmSaTr));
  CHECK(none.no_match);
  CHECK(none.results.empty());
  const auto unseen = model.rank("zzzzqqq", config(Mode::kVsmSaTr));
  CHECK(unseen.no_match);
}

TEST_CASE("snippet is the comment prefix") {
  const auto& model = mini();
  const auto res = model.rank(kPlantedQuery, config(Mode::kVsmSaTr));
  for (const auto& r : res.results) {
    const auto* text = model.comment_text(r.ref);
    REQUIRE(text != nullptr);
    CHECK(r.snippet == make_snippet(*text));
  }
}

TEST_CASE("text cell alignment query retrieves all four gold comments in the top 10") {
  const auto res = libreoffice().rank("text cell alignment disappears", config(Mode::kVsmSaTr));
  const std::vector<CommentRef> gold{
      {"libreoffice", 34436, 3}, {"libreoffice", 33662, 2}, {"libreoffice", 34136, 4}, {"libreoffice", 32795, 2}};
  for (const auto& g : gold) {
    CAPTURE(g.to_string());
    CHECK(std::any_of(res.results.begin(), res.results.end(), [&](const RankedResult& r) { return r.ref == g; }));
  }
  for (const auto& r : res.results) CHECK(r.ref.bug_id != 34600);
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include <doctest.h>

#include <memory>
#include <thread>

#include "retrorank/errors.h"
#include "retrorank/evalkit.h"
#include "retrorank/service.h"
#include "test_support.h"

using namespace retrorank;
using namespace retrorank::service;
using retrorank::testing::TempDir;

namespace {

const textprep::Stopwords& stopwords() { return retrorank::testing::shipped_resources().stopwords; }

/// Data directory with the mini-corpus ingested and built.
const TempDir& mini_data() {
  static const auto dir = [] {
    auto d = std::make_unique<TempDir>();
    ingest(retrorank::testing::fixtures_dir() / "minicorpus/xml", d->path(), "mini");
    build(d->path(), "mini", retrorank::testing::shipped_resources());
    return d;
  }();
  return *dir;
}

const Catalog& catalog() {
  static const Catalog c = Catalog::load(mini_data().path(), stopwords());
  return c;
}

RelevanceRating rating(int score, std::string rater = "r1") {
  RelevanceRating r;
  r.rater_id = std::move(rater);
  r.query_text = "segfault in register allocator spill code";
  r.ref = {"mini", 1030, 2};
  r.score = score;
  return r;
}

std::vector<ranker::Mode> all_modes() { return {std::begin(ranker::kAllModes), std::end(ranker::kAllModes)}; }

}  // namespace

TEST_CASE("catalog lists built projects") {
  CHECK(catalog().projects() == std::vector<std::string>{"mini"});
  CHECK(catalog().model("mini") != nullptr);
  CHECK(catalog().store("mini") != nullptr);
  CHECK(catalog().model("nope") == nullptr);
  CHECK_THROWS_AS(Catalog::load("/nonexistent/retrorank-data", stopwords()), MissingStageError);
}

TEST_CASE("ingested but unbuilt projects are left out of the catalog") {
  TempDir tmp;
  ingest(retrorank::testing::fixtures_dir() / "gcc/xml", tmp.path(), "gcc");
  CHECK(Catalog::load(tmp.path(), stopwords()).projects().empty());
}

TEST_CASE("query requests from JSON") {
  const auto req = query_request_from_json(Json::parse(R"({"project":"mini","query":"crash","mode":"vsm","top_k":3})"));
  CHECK(req.project == "mini");
  CHECK(req.query_text == "crash");
  CHECK(req.mode == ranker::Mode::kVsm);
  CHECK(req.top_k == 3);
  CHECK(query_request_from_json(Json::parse(R"({"project":"mini","query":"x"})")).mode == ranker::Mode::kVsmSaTr);
  CHECK_THROWS_AS(query_request_from_json(Json::parse(R"({"query":"x"})")), ValidationError);
  CHECK_THROWS_AS(query_request_from_json(Json::parse(R"({"project":"mini","query":""})")), ValidationError);
  CHECK_THROWS_AS(query_request_from_json(Json::parse(R"({"project":"mini","query":"x","mode":"bm25"})")),
                  ValidationError);
  CHECK_THROWS_AS(query_request_from_json(Json::parse(R"({"project":"mini","query":"x","top_k":0})")),
                  ValidationError);
  CHECK_THROWS_AS(query_request_from_json(Json::parse("[1]")), ValidationError);
}

TEST_CASE("run_query is deterministic apart from timing") {
  const QueryRequest req{"mini", "segfault in register allocator spill code", ranker::Mode::kVsmSaTr, 10};
  auto a = to_json(run_query(catalog(), req));
  auto b = to_json(run_query(catalog(), req));
  CHECK(a.contains("elapsed_ms"));
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  CHECK(a == b);
  CHECK(a["no_match"] == false);
  const auto& first = a["results"][0];
  CHECK(first["rank"] == 1);
  CHECK(first["project"] == "mini");
  CHECK(first["bug_id"] == 1030);
  CHECK(first["comment_id"] == 2);
  for (const char* key : {"final_score", "vsm_score", "sa_boost", "tr_boost", "snippet"}) CHECK(first.contains(key));
  CHECK_THROWS_AS(run_query(catalog(), {"nope", "x", ranker::Mode::kVsm, 10}), NotFoundError);
}

TEST_CASE("the two rating modes disagree on the planted query") {
  const auto vsm = run_query(catalog(), {"mini", "segfault in register allocator spill code", ranker::Mode::kVsm, 10});
  const auto full =
      run_query(catalog(), {"mini", "segfault in register allocator spill code", ranker::Mode::kVsmSaTr, 10});
  REQUIRE_FALSE(vsm.results.empty());
  REQUIRE_FALSE(full.results.empty());
  CHECK(vsm.results[0].ref != full.results[0].ref);
}

TEST_CASE("rating JSON round trip and validation") {
  auto r = rating(3);
  r.rated_at = 1700000000;
  r.mode = "vsm";
  CHECK(rating_from_json(to_json(r)) == r);
  auto j = to_json(r);
  j["score"] = 5;
  CHECK_THROWS_AS(rating_from_json(j), ValidationError);
  j["score"] = 0;
  CHECK_THROWS_AS(rating_from_json(j), ValidationError);
  j = to_json(r);
  j.erase("rater_id");
  CHECK_THROWS_AS(rating_from_json(j), ValidationError);
  j = to_json(r);
  j["mode"] = "bm25";
  CHECK_THROWS_AS(rating_from_json(j), ValidationError);
}

TEST_CASE("ratings log appends and exports in order") {
  TempDir tmp;
  RatingsLog log(tmp.path() / "ratings.ndjson");
  CHECK(log.export_all().empty());
  std::size_t previous = 0;
  for (int s : {4, 3, 3, 4}) {
    const auto stored = log.append(rating(s));
    CHECK(stored.rated_at > 0);
    const auto all = log.export_all();
    CHECK(all.size() == previous + 1);
    CHECK(all.back() == stored);
    previous = all.size();
  }
  CHECK_THROWS_AS(log.append(rating(5)), ValidationError);
  const auto all = log.export_all();
  REQUIRE(all.size() == 4);
  std::vector<double> scores;
  for (const auto& r : all) scores.push_back(r.score);
  CHECK(evalkit::summary(scores).mean == 3.5);
  // A second handle on the same file sees the same records.
  CHECK(RatingsLog(tmp.path() / "ratings.ndjson").export_all() == all);
}

TEST_CASE("concurrent appends are all persisted") {
  TempDir tmp;
  RatingsLog log(tmp.path() / "ratings.ndjson");
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&log, t] {
      for (int i = 0; i < 25; ++i) log.append(rating(1 + (i % 4), "rater" + std::to_string(t)));
    });
  }
  for (auto& th : threads) th.join();
  CHECK(log.export_all().size() == 100);
}

TEST_CASE("a corrupt ratings file is a storage error") {
  TempDir tmp;
  retrorank::testing::write_file(tmp.path() / "ratings.ndjson", "{\"rater_id\":\n");
  CHECK_THROWS_AS(RatingsLog(tmp.path() / "ratings.ndjson").export_all(), StorageError);
}

TEST_CASE("address parsing") {
  CHECK(parse_addr("127.0.0.1:8080") == std::pair<std::string, int>{"127.0.0.1", 8080});
  CHECK(parse_addr("9000") == std::pair<std::string, int>{"0.0.0.0", 9000});
  CHECK_THROWS_AS(parse_addr("host:99999"), ValidationError);
}

TEST_CASE("operations require the earlier stages") {
  TempDir tmp;
  try {
    build(tmp.path(), "gcc", retrorank::testing::shipped_resources());
    FAIL("expected MissingStageError");
  } catch (const MissingStageError& e) {
    CHECK(std::string(e.what()).find("not ingested") != std::string::npos);
  }
  ingest(retrorank::testing::fixtures_dir() / "gcc/xml", tmp.path(), "gcc");
  try {
    query(tmp.path(), "gcc", "implicit declaration", ranker::RankConfig{}, stopwords());
    FAIL("expected MissingStageError");
  } catch (const MissingStageError& e) {
    CHECK(std::string(e.what()).find("index not built") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest(tmp.path() / "missing", tmp.path(), "gcc"), ConfigError);
}

TEST_CASE("query output formats") {
  const auto text = query(mini_data().path(), "mini", "segfault in register allocator spill code", ranker::RankConfig{},
                          stopwords());
  CHECK(text.find("mini:1030:2") != std::string::npos);
  const auto json = Json::parse(query(mini_data().path(), "mini", "segfault in register allocator spill code",
                                      ranker::RankConfig{}, stopwords(), true));
  CHECK_FALSE(json.contains("elapsed_ms"));
  CHECK(json["results"][0]["bug_id"] == 1030);
  CHECK(query(mini_data().path(), "mini", "the of and", ranker::RankConfig{}, stopwords()).rfind("no match", 0) == 0);
}

TEST_CASE("evaluation report from the checked-in positions") {
  const auto report = eval_positions(retrorank::testing::fixtures_dir() / "eval1_positions.tsv", all_modes());
  CHECK(report.find("Ranking performance per configuration") != std::string::npos);
  CHECK(report.find("Statistical summary") != std::string::npos);
  for (const char* mu : {"9.1", "3.7", "3.4", "1.8"}) CHECK(report.find(mu) != std::string::npos);
}

TEST_CASE("evaluation against a goldset ranks the planted comment first under sentiment") {
  const std::vector<ranker::Mode> modes{ranker::Mode::kVsm, ranker::Mode::kVsmSaTr};
  const auto report = eval_goldset(mini_data().path(), "mini", retrorank::testing::fixtures_dir() / "minicorpus/goldset.tsv",
                                   modes, stopwords());
  CHECK(report.find("M1") != std::string::npos);
  CHECK(report == eval_goldset(mini_data().path(), "mini", retrorank::testing::fixtures_dir() / "minicorpus/goldset.tsv",
                               modes, stopwords()));
}

TEST_CASE("bug JSON carries the comments") {
  const auto* bug = catalog().store("mini")->find(1030);
  REQUIRE(bug != nullptr);
  const auto j = to_json(*bug);
  CHECK(j.is_object());
  CHECK(j.dump().find("register allocator") != std::string::npos);
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "retrorank/corpus.h"
#include "retrorank/evalkit.h"
#include "retrorank/project_model.h"
#include "retrorank/ranker.h"

namespace retrorank::service {

using Json = nlohmann::ordered_json;

struct RelevanceRating {
  std::string rater_id;
  std::string query_text;
  CommentRef ref;
  int score = 0;  // 1..4
  std::int64_t rated_at = 0;
  std::string mode;  // optional

  bool operator==(const RelevanceRating&) const = default;
};

Json to_json(const ranker::RankedResult& r);
Json to_json(const corpus::BugReport& bug);
Json to_json(const RelevanceRating& r);
/// Throws ValidationError on missing fields or a score outside 1..4.
RelevanceRating rating_from_json(const Json& j);

/// Append-only newline-delimited ratings file. Appends are serialized;
/// each record is flushed before append() returns.
class RatingsLog {
 public:
  explicit RatingsLog(std::filesystem::path path);

  /// Validates, stamps rated_at when it is 0, persists and returns the record.
  RelevanceRating append(RelevanceRating rating);
  /// All ratings in append order.
  std::vector<RelevanceRating> export_all() const;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
};

/// Immutable snapshot of every built project under a data directory.
class Catalog {
 public:
  /// Loads each project directory that holds a built index.
  static Catalog load(const std::filesystem::path& data_dir, const textprep::Stopwords& stopwords);

  std::vector<std::string> projects() const;
  const ProjectModel* model(const std::string& project) const;
  const corpus::BugStore* store(const std::string& project) const;

 private:
  std::map<std::string, std::shared_ptr<const ProjectModel>> models_;
  std::map<std::string, std::shared_ptr<const corpus::BugStore>> stores_;
};

struct QueryRequest {
  std::string project;
  std::string query_text;
  ranker::Mode mode = ranker::Mode::kVsmSaTr;
  std::size_t top_k = 10;
};

QueryRequest query_request_from_json(const Json& j);

struct QueryResponse {
  std::vector<ranker::RankedResult> results;
  bool no_match = false;
  double elapsed_ms = 0;
};

Json to_json(const QueryResponse& r);

/// Throws NotFoundError for an unknown project.
QueryResponse run_query(const Catalog& catalog, const QueryRequest& request);

struct ServerOptions {
  bool blind = false;  // present modes as "Tool A"/"Tool B"
  std::filesystem::path web_root;  // served at "/" when it exists
};

/// HTTP front end; see docs/api.md for the routes.
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const Catalog> catalog, std::shared_ptr<RatingsLog> ratings,
             ServerOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Command-line operations. Each returns the text printed on stdout.

struct IngestSummary {
  std::size_t files = 0;
  std::size_t bugs = 0;
  std::size_t stored = 0;
  std::vector<std::string> warnings;
};

IngestSummary ingest(const std::filesystem::path& input_dir, const std::filesystem::path& data_dir,
                     const std::string& project);

std::string build(const std::filesystem::path& data_dir, const std::string& project,
                  const Resources& resources, const BuildOptions& options = {});

std::string query(const std::filesystem::path& data_dir, const std::string& project, const std::string& text,
                  const ranker::RankConfig& cfg, const textprep::Stopwords& stopwords, bool as_json = false);

/// Report for a checked-in position table.
std::string eval_positions(const std::filesystem::path& positions_path, std::span<const ranker::Mode> modes,
                           int k = 10);

/// Runs every goldset query under each mode against a built project
/// (retrieval depth `depth`) and reports the resulting positions.
std::string eval_goldset(const std::filesystem::path& data_dir, const std::string& project,
                         const std::filesystem::path& goldset_path, std::span<const ranker::Mode> modes,
                         const textprep::Stopwords& stopwords, std::size_t depth = 100, int k = 10);

/// Splits "host:port"; a bare port binds 0.0.0.0.
std::pair<std::string, int> parse_addr(const std::string& addr);

}  // namespace retrorank::service

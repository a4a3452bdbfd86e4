// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/service.h"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "retrorank/errors.h"
#include "retrorank/report.h"

namespace retrorank::service {

Json to_json(const ranker::RankedResult& r) {
  Json j;
  j["rank"] = r.rank;
  j["project"] = r.ref.project;
  j["bug_id"] = r.ref.bug_id;
  j["comment_id"] = r.ref.comment_id;
  j["final_score"] = r.final_score;
  j["vsm_score"] = r.vsm_score;
  j["sa_boost"] = r.sa_boost;
  j["tr_boost"] = r.tr_boost;
  j["snippet"] = r.snippet;
  return j;
}

Json to_json(const corpus::BugReport& bug) { return Json::parse(corpus::serialize_bug(bug)); }

Json to_json(const QueryResponse& r) {
  Json j;
  j["results"] = Json::array();
  for (const auto& row : r.results) j["results"].push_back(to_json(row));
  j["no_match"] = r.no_match;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

QueryRequest query_request_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("query request must be an object");
  QueryRequest req;
  if (!j.contains("project") || !j["project"].is_string()) throw ValidationError("'project' is required");
  if (!j.contains("query") || !j["query"].is_string()) throw ValidationError("'query' is required");
  req.project = j["project"].get<std::string>();
  req.query_text = j["query"].get<std::string>();
  if (req.query_text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ValidationError("'query' must not be empty");
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ValidationError("'mode' must be a string");
    auto mode = ranker::parse_mode(j["mode"].get<std::string>());
    if (!mode) throw ValidationError("unknown mode '" + j["mode"].get<std::string>() + "'");
    req.mode = *mode;
  }
  if (j.contains("top_k")) {
    if (!j["top_k"].is_number_integer() || j["top_k"].get<long long>() < 1) {
      throw ValidationError("'top_k' must be a positive integer");
    }
    req.top_k = j["top_k"].get<std::size_t>();
  }
  return req;
}

Catalog Catalog::load(const std::filesystem::path& data_dir, const textprep::Stopwords& stopwords) {
  Catalog catalog;
  if (!std::filesystem::is_directory(data_dir)) {
    throw MissingStageError("data directory " + data_dir.string() + " does not exist (run `retrorank ingest`)");
  }
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "index.bin")) {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    catalog.models_[name] = std::make_shared<const ProjectModel>(ProjectModel::load(data_dir, name, stopwords));
    catalog.stores_[name] = std::make_shared<const corpus::BugStore>(data_dir, name);
  }
  return catalog;
}

std::vector<std::string> Catalog::projects() const {
  std::vector<std::string> out;
  for (const auto& [name, model] : models_) out.push_back(name);
  return out;
}

const ProjectModel* Catalog::model(const std::string& project) const {
  auto it = models_.find(project);
  return it == models_.end() ? nullptr : it->second.get();
}

const corpus::BugStore* Catalog::store(const std::string& project) const {
  auto it = stores_.find(project);
  return it == stores_.end() ? nullptr : it->second.get();
}

QueryResponse run_query(const Catalog& catalog, const QueryRequest& request) {
  const ProjectModel* model = catalog.model(request.project);
  if (!model) throw NotFoundError("unknown project '" + request.project + "'");
  const auto start = std::chrono::steady_clock::now();
  ranker::RankConfig cfg;
  cfg.mode = request.mode;
  cfg.top_k = request.top_k;
  auto ranked = model->rank(request.query_text, cfg);
  QueryResponse response;
  response.results = std::move(ranked.results);
  response.no_match = ranked.no_match;
  response.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return response;
}

std::pair<std::string, int> parse_addr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  std::string host = colon == std::string::npos ? "0.0.0.0" : addr.substr(0, colon);
  const std::string port_text = colon == std::string::npos ? addr : addr.substr(colon + 1);
  if (host.empty()) host = "0.0.0.0";
  int port = -1;
  try {
    std::size_t used = 0;
    port = std::stoi(port_text, &used);
    if (used != port_text.size()) port = -1;
  } catch (const std::exception&) {
    port = -1;
  }
  if (port < 0 || port > 65535) throw ValidationError("invalid address '" + addr + "' (expected host:port)");
  return {host, port};
}

IngestSummary ingest(const std::filesystem::path& input_dir, const std::filesystem::path& data_dir,
                     const std::string& project) {
  if (!std::filesystem::is_directory(input_dir)) {
    throw ConfigError("input directory " + input_dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(input_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  IngestSummary summary;
  std::vector<corpus::BugReport> bugs;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw StorageError("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    corpus::ParseResult parsed;
    try {
      parsed = corpus::parse_bugzilla_xml(ss.str(), project);
    } catch (const ParseError& e) {
      throw ParseError(file.string() + ": " + e.what(), e.line(), e.column());
    }
    for (const auto& err : parsed.errors) {
      summary.warnings.push_back(fmt::format("{}: bug #{} skipped: {}", file.string(), err.bug_index, err.message));
    }
    std::move(parsed.bugs.begin(), parsed.bugs.end(), std::back_inserter(bugs));
    ++summary.files;
  }
  summary.bugs = bugs.size();
  corpus::BugStore store(data_dir, project);
  auto result = store.store_bugs(bugs);
  summary.stored = result.stored;
  std::move(result.warnings.begin(), result.warnings.end(), std::back_inserter(summary.warnings));
  return summary;
}

std::string build(const std::filesystem::path& data_dir, const std::string& project, const Resources& resources,
                  const BuildOptions& options) {
  const corpus::BugStore store(data_dir, project);
  if (!store.exists_on_disk()) {
    throw MissingStageError("project '" + project + "' not ingested (run `retrorank ingest` first)");
  }
  BuildReport report;
  const auto model = ProjectModel::build(store, resources, options, &report);
  model.save(data_dir);
  return fmt::format(
      "project {}: {} resolved comments, vocabulary {}\n"
      "sentiment dictionaries: {} bonus, {} penalty\n"
      "term graph: {} vertices, {} edges; textrank {} after {} sweeps; {} dictionary terms\n",
      project, report.comments, report.vocabulary, report.bonus_terms, report.penalty_terms,
      report.graph_vertices, report.graph_edges, report.textrank_converged ? "converged" : "did NOT converge",
      report.textrank_iterations, report.tr_entries);
}

std::string query(const std::filesystem::path& data_dir, const std::string& project, const std::string& text,
                  const ranker::RankConfig& cfg, const textprep::Stopwords& stopwords, bool as_json) {
  const auto model = ProjectModel::load(data_dir, project, stopwords);
  const auto response = model.rank(text, cfg);
  if (as_json) {
    QueryResponse qr;
    qr.results = response.results;
    qr.no_match = response.no_match;
    auto j = to_json(qr);
    j.erase("elapsed_ms");
    return j.dump(2) + "\n";
  }
  if (response.no_match) return "no match: no query term occurs in the index\n";
  return report::results_table(response.results);
}

namespace {

std::string full_report(std::span<const evalkit::PositionTableRow> rows, std::span<const ranker::Mode> modes,
                        int k) {
  std::string out = "Ranking performance per configuration\n\n";
  out += report::performance_table(rows, modes, k);
  out += "\nStatistical summary\n\n";
  out += report::statistics_table(rows, modes);
  return out;
}

}  // namespace

std::string eval_positions(const std::filesystem::path& positions_path, std::span<const ranker::Mode> modes, int k) {
  const auto rows = evalkit::load_position_table(positions_path);
  return full_report(rows, modes, k);
}

std::string eval_goldset(const std::filesystem::path& data_dir, const std::string& project,
                         const std::filesystem::path& goldset_path, std::span<const ranker::Mode> modes,
                         const textprep::Stopwords& stopwords, std::size_t depth, int k) {
  const auto model = ProjectModel::load(data_dir, project, stopwords);
  const auto goldset = evalkit::load_goldset(goldset_path);
  std::vector<evalkit::PositionTableRow> rows;
  for (const auto& entry : goldset) {
    evalkit::PositionTableRow row;
    row.project = project;
    row.query_id = entry.query_id;
    row.query_text = entry.query_text;
    std::vector<std::string> bugs;
    std::vector<std::string> comments;
    for (const auto& g : entry.gold) {
      const auto bug = std::to_string(g.bug_id);
      if (std::find(bugs.begin(), bugs.end(), bug) == bugs.end()) bugs.push_back(bug);
      comments.push_back("C" + std::to_string(g.comment_id));
    }
    row.gold_bug = fmt::format("{}", fmt::join(bugs, ","));
    row.gold_comments = fmt::format("{}", fmt::join(comments, ","));
    for (auto mode : modes) {
      ranker::RankConfig cfg;
      cfg.mode = mode;
      cfg.top_k = depth;
      const auto response = model.rank(entry.query_text, cfg);
      row.positions[mode] = evalkit::rank_positions(response.results, entry.gold, entry.query_id).positions;
    }
    rows.push_back(std::move(row));
  }
  return full_report(rows, modes, k);
}

}  // namespace retrorank::service

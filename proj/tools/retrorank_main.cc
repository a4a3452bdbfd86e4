// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include <CLI11.hpp>
#include <fmt/format.h>

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <memory>

#include "retrorank/errors.h"
#include "retrorank/service.h"

namespace {

using namespace retrorank;

std::vector<ranker::Mode> parse_modes(const std::vector<std::string>& names) {
  std::vector<ranker::Mode> modes;
  for (const auto& name : names) {
    auto mode = ranker::parse_mode(name);
    if (!mode) throw CLI::ValidationError("--mode", "unknown mode '" + name + "' (vsm, vsm_sa, vsm_tr, vsm_sa_tr)");
    modes.push_back(*mode);
  }
  if (modes.empty()) modes.assign(std::begin(ranker::kAllModes), std::end(ranker::kAllModes));
  return modes;
}

service::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrieve bug-fixing comments for a query from past bug reports"};
  app.require_subcommand(1);

  std::string data_dir = "data";
  if (const char* env = std::getenv("RETRORANK_DATA_DIR")) data_dir = env;
  std::string resources_dir = Resources::default_dir().string();
  app.add_option("--data-dir", data_dir, "Artifact directory (default: $RETRORANK_DATA_DIR or ./data)");
  app.add_option("--resources", resources_dir, "Directory holding stopwords.txt and lexicon.tsv");

  std::string project;
  std::string input_dir;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse Bugzilla XML exports into the bug store");
  ingest_cmd->add_option("--project", project, "Project name")->required();
  ingest_cmd->add_option("--input", input_dir, "Directory of *.xml exports")->required();

  BuildOptions build_options;
  std::string scheme = "raw";
  auto* build_cmd = app.add_subcommand("build", "Build the TF-IDF index and SA/TR dictionaries");
  build_cmd->add_option("--project", project, "Project name")->required();
  build_cmd->add_option("--scheme", scheme, "Term weighting: raw or sublinear");
  build_cmd->add_option("--window", build_options.cooccurrence_window,
                        "Co-occurrence window in terms (0 = whole comment)");
  build_cmd->add_option("--damping", build_options.textrank.damping, "TextRank damping factor");
  build_cmd->add_option("--tr-top-n", build_options.tr_top_n, "Terms kept in the TR dictionary");
  build_cmd->add_option("--expand-lexicon", build_options.lexicon_expansion_threshold,
                        "Grow the lexicon from comment co-occurrence at this threshold (0 = off)");

  std::string query_text;
  std::string mode_name = "vsm_sa_tr";
  std::string combine = "multiply";
  ranker::RankConfig cfg;
  bool as_json = false;
  auto* query_cmd = app.add_subcommand("query", "Rank resolved comments for a query");
  query_cmd->add_option("--project", project, "Project name")->required();
  query_cmd->add_option("query", query_text, "Query text")->required();
  query_cmd->add_option("--mode", mode_name, "vsm, vsm_sa, vsm_tr or vsm_sa_tr");
  query_cmd->add_option("--top-k", cfg.top_k, "Number of results");
  query_cmd->add_option("--lambda-sa", cfg.lambda_sa, "Weight of the sentiment boost");
  query_cmd->add_option("--lambda-tr", cfg.lambda_tr, "Weight of the TextRank boost");
  query_cmd->add_option("--combine", combine, "multiply or add");
  query_cmd->add_flag("--json", as_json, "Print JSON instead of a table");

  std::vector<std::string> eval_modes;
  std::string goldset;
  std::string positions;
  int eval_k = 10;
  std::size_t depth = 100;
  auto* eval_cmd = app.add_subcommand("eval", "Report positions, MAP, MRR and significance tests");
  eval_cmd->add_option("--project", project, "Project name (with --goldset)");
  eval_cmd->add_option("--goldset", goldset, "Goldset TSV to run against a built project");
  eval_cmd->add_option("--positions", positions, "Position table TSV to report on directly");
  eval_cmd->add_option("--mode", eval_modes, "Modes to report (repeatable; default all)")->delimiter(',');
  eval_cmd->add_option("--k", eval_k, "Cut-off for MAP and MRR");
  eval_cmd->add_option("--depth", depth, "Retrieval depth per goldset query");

  std::string addr = "127.0.0.1:8080";
  bool blind = false;
  std::string web_root = "web/dist";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--addr", addr, "host:port to listen on");
  serve_cmd->add_flag("--blind", blind, "Label modes as Tool A / Tool B");
  serve_cmd->add_option("--web-root", web_root, "Static files served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest_cmd) {
      const auto summary = service::ingest(input_dir, data_dir, project);
      for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
      fmt::print("ingested {} bugs from {} files into project {} ({} stored)\n", summary.bugs, summary.files,
                 project, summary.stored);
    } else if (*build_cmd) {
      auto parsed = vsm::parse_scheme(scheme);
      if (!parsed) throw CLI::ValidationError("--scheme", "expected raw or sublinear");
      build_options.scheme = *parsed;
      const auto resources = Resources::load(resources_dir);
      fmt::print("{}", service::build(data_dir, project, resources, build_options));
    } else if (*query_cmd) {
      auto mode = ranker::parse_mode(mode_name);
      if (!mode) throw CLI::ValidationError("--mode", "unknown mode '" + mode_name + "' (vsm, vsm_sa, vsm_tr, vsm_sa_tr)");
      auto comb = ranker::parse_combine(combine);
      if (!comb) throw CLI::ValidationError("--combine", "expected multiply or add");
      cfg.mode = *mode;
      cfg.combine = *comb;
      cfg.validate();
      const auto resources = Resources::load(resources_dir);
      fmt::print("{}", service::query(data_dir, project, query_text, cfg, resources.stopwords, as_json));
    } else if (*eval_cmd) {
      const auto modes = parse_modes(eval_modes);
      if (!positions.empty()) {
        fmt::print("{}", service::eval_positions(positions, modes, eval_k));
      } else if (!goldset.empty()) {
        if (project.empty()) throw CLI::ValidationError("--project", "required with --goldset");
        const auto resources = Resources::load(resources_dir);
        fmt::print("{}", service::eval_goldset(data_dir, project, goldset, modes, resources.stopwords, depth, eval_k));
      } else {
        throw CLI::ValidationError("eval", "one of --positions or --goldset is required");
      }
    } else if (*serve_cmd) {
      const auto [host, port] = service::parse_addr(addr);
      const auto resources = Resources::load(resources_dir);
      auto catalog = std::make_shared<const service::Catalog>(service::Catalog::load(data_dir, resources.stopwords));
      auto ratings = std::make_shared<service::RatingsLog>(std::filesystem::path(data_dir) / "ratings.ndjson");
      service::HttpServer server(catalog, ratings, {blind, web_root});
      const int bound = server.bind(host, port);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      fmt::print("serving {} projects on http://{}:{}\n", catalog->projects().size(), host, bound);
      std::fflush(stdout);
      server.listen();
      g_server = nullptr;
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

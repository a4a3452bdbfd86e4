// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include <httplib.h>

#include <charconv>

#include "retrorank/errors.h"
#include "retrorank/service.h"

namespace retrorank::service {

namespace {

constexpr const char* kJsonType = "application/json";

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, Json{{"error", message}});
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("request body is not valid JSON: ") + e.what());
  }
}

// Blind study labels: the full configuration is "Tool A", the baseline "Tool B".
Json mode_labels(bool blind) {
  Json modes = Json::array();
  if (blind) {
    modes.push_back({{"id", std::string(ranker::mode_name(ranker::Mode::kVsmSaTr))}, {"label", "Tool A"}});
    modes.push_back({{"id", std::string(ranker::mode_name(ranker::Mode::kVsm))}, {"label", "Tool B"}});
    return modes;
  }
  for (auto m : ranker::kAllModes) {
    modes.push_back({{"id", std::string(ranker::mode_name(m))}, {"label", std::string(ranker::mode_label(m))}});
  }
  return modes;
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

struct HttpServer::Impl {
  std::shared_ptr<const Catalog> catalog;
  std::shared_ptr<RatingsLog> ratings;
  ServerOptions options;
  httplib::Server server;

  void install_routes();
};

void HttpServer::Impl::install_routes() {
  server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    Json body;
    body["status"] = "ok";
    body["projects"] = catalog->projects();
    body["blind"] = options.blind;
    body["modes"] = mode_labels(options.blind);
    send_json(res, 200, body);
  });

  server.Post("/api/query", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto request = query_request_from_json(parse_body(req));
      send_json(res, 200, to_json(run_query(*catalog, request)));
    });
  });

  server.Post("/api/ratings", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto rating = rating_from_json(parse_body(req));
      if (!catalog->model(rating.ref.project)) {
        throw NotFoundError("unknown project '" + rating.ref.project + "'");
      }
      const auto stored = ratings->append(std::move(rating));
      send_json(res, 201, Json{{"ok", true}, {"rating", to_json(stored)}});
    });
  });

  server.Get("/api/ratings/export", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json body = Json::array();
      for (const auto& r : ratings->export_all()) body.push_back(to_json(r));
      send_json(res, 200, body);
    });
  });

  server.Get(R"(/api/bugs/([^/]+)/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string project = req.matches[1];
      const std::string id_text = req.matches[2];
      std::int64_t bug_id = 0;
      const auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), bug_id);
      if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
        throw ValidationError("bug id must be an integer");
      }
      const auto* store = catalog->store(project);
      if (!store) throw NotFoundError("unknown project '" + project + "'");
      const auto* bug = store->find(bug_id);
      if (!bug) throw NotFoundError("bug " + id_text + " not found in project '" + project + "'");
      send_json(res, 200, to_json(*bug));
    });
  });

  if (!options.web_root.empty() && std::filesystem::is_directory(options.web_root)) {
    server.set_mount_point("/", options.web_root.string());
  }
}

HttpServer::HttpServer(std::shared_ptr<const Catalog> catalog, std::shared_ptr<RatingsLog> ratings,
                       ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->catalog = std::move(catalog);
  impl_->ratings = std::move(ratings);
  impl_->options = std::move(options);
  impl_->install_routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace retrorank::service

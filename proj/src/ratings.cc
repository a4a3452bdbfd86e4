// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include <chrono>
#include <fstream>

#include "retrorank/errors.h"
#include "retrorank/service.h"

namespace retrorank::service {

Json to_json(const RelevanceRating& r) {
  Json j;
  j["rater_id"] = r.rater_id;
  j["query_text"] = r.query_text;
  j["project"] = r.ref.project;
  j["bug_id"] = r.ref.bug_id;
  j["comment_id"] = r.ref.comment_id;
  j["score"] = r.score;
  j["rated_at"] = r.rated_at;
  if (!r.mode.empty()) j["mode"] = r.mode;
  return j;
}

RelevanceRating rating_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("rating must be an object");
  const auto require_string = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw ValidationError(std::string("'") + key + "' is required");
    return j[key].get<std::string>();
  };
  const auto require_int = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw ValidationError(std::string("'") + key + "' must be an integer");
    }
    return j[key].get<std::int64_t>();
  };
  RelevanceRating r;
  r.rater_id = require_string("rater_id");
  r.query_text = require_string("query_text");
  r.ref.project = require_string("project");
  r.ref.bug_id = require_int("bug_id");
  r.ref.comment_id = require_int("comment_id");
  const auto score = require_int("score");
  if (score < 1 || score > 4) throw ValidationError("'score' must be between 1 and 4");
  r.score = static_cast<int>(score);
  if (j.contains("rated_at")) r.rated_at = require_int("rated_at");
  if (j.contains("mode")) {
    r.mode = require_string("mode");
    if (!ranker::parse_mode(r.mode)) throw ValidationError("unknown mode '" + r.mode + "'");
  }
  if (r.rater_id.empty()) throw ValidationError("'rater_id' must not be empty");
  return r;
}

RatingsLog::RatingsLog(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
}

RelevanceRating RatingsLog::append(RelevanceRating rating) {
  // Round-trip through the validator so programmatic callers get the same
  // checks as HTTP clients.
  rating = rating_from_json(to_json(rating));
  if (rating.rated_at == 0) {
    rating.rated_at = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  }
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw StorageError("cannot append to " + path_.string());
  out << to_json(rating).dump() << '\n';
  out.flush();
  if (!out) throw StorageError("write failed for " + path_.string());
  return rating;
}

std::vector<RelevanceRating> RatingsLog::export_all() const {
  std::lock_guard lock(mu_);
  std::vector<RelevanceRating> out;
  std::ifstream in(path_);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(rating_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw StorageError("corrupt ratings record in " + path_.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace retrorank::service

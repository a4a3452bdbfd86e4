// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include "retrorank/corpus.h"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "retrorank/errors.h"

namespace retrorank {

std::string CommentRef::to_string() const {
  return project + ":" + std::to_string(bug_id) + ":" + std::to_string(comment_id);
}

std::optional<CommentRef> CommentRef::parse(std::string_view text) {
  const auto last = text.rfind(':');
  if (last == std::string_view::npos || last == 0) return std::nullopt;
  const auto mid = text.rfind(':', last - 1);
  if (mid == std::string_view::npos || mid == 0) return std::nullopt;
  CommentRef ref;
  ref.project = std::string(text.substr(0, mid));
  const auto bug = text.substr(mid + 1, last - mid - 1);
  const auto comment = text.substr(last + 1);
  auto r1 = std::from_chars(bug.data(), bug.data() + bug.size(), ref.bug_id);
  auto r2 = std::from_chars(comment.data(), comment.data() + comment.size(), ref.comment_id);
  if (r1.ec != std::errc() || r1.ptr != bug.data() + bug.size()) return std::nullopt;
  if (r2.ec != std::errc() || r2.ptr != comment.data() + comment.size()) return std::nullopt;
  if (ref.bug_id <= 0 || ref.comment_id < 0) return std::nullopt;
  return ref;
}

namespace corpus {

namespace {

constexpr std::pair<StatusKind, std::string_view> kStatusNames[] = {
    {StatusKind::kUnconfirmed, "UNCONFIRMED"}, {StatusKind::kNew, "NEW"},
    {StatusKind::kAssigned, "ASSIGNED"},       {StatusKind::kResolved, "RESOLVED"},
    {StatusKind::kVerified, "VERIFIED"},       {StatusKind::kClosed, "CLOSED"},
};

}  // namespace

BugStatus BugStatus::parse(std::string_view raw) {
  for (const auto& [kind, name] : kStatusNames) {
    if (raw == name) return BugStatus(kind);
  }
  return other(std::string(raw));
}

std::string BugStatus::to_string() const {
  for (const auto& [kind, name] : kStatusNames) {
    if (kind == kind_) return std::string(name);
  }
  return raw_;
}

Priority parse_priority(std::string_view raw) {
  if (raw == "P1") return Priority::kP1;
  if (raw == "P2") return Priority::kP2;
  if (raw == "P3") return Priority::kP3;
  if (raw == "P4") return Priority::kP4;
  return Priority::kUnknown;
}

std::string_view priority_name(Priority p) {
  switch (p) {
    case Priority::kP1: return "P1";
    case Priority::kP2: return "P2";
    case Priority::kP3: return "P3";
    case Priority::kP4: return "P4";
    case Priority::kUnknown: break;
  }
  return "UNKNOWN";
}

std::string serialize_bug(const BugReport& bug) {
  nlohmann::ordered_json j;
  j["project"] = bug.project;
  j["bug_id"] = bug.bug_id;
  j["title"] = bug.title;
  j["description"] = bug.description;
  j["status"] = bug.status.to_string();
  j["priority"] = priority_name(bug.priority);
  auto& comments = j["comments"] = nlohmann::ordered_json::array();
  for (const auto& c : bug.comments) {
    nlohmann::ordered_json jc;
    jc["id"] = c.comment_id;
    jc["author"] = c.author;
    jc["created"] = c.created;
    jc["text"] = c.text;
    comments.push_back(std::move(jc));
  }
  return j.dump();
}

BugReport deserialize_bug(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    BugReport bug;
    bug.project = j.at("project").get<std::string>();
    bug.bug_id = j.at("bug_id").get<std::int64_t>();
    bug.title = j.at("title").get<std::string>();
    bug.description = j.at("description").get<std::string>();
    bug.status = BugStatus::parse(j.at("status").get<std::string>());
    bug.priority = parse_priority(j.at("priority").get<std::string>());
    for (const auto& jc : j.at("comments")) {
      Comment c;
      c.comment_id = jc.at("id").get<std::int64_t>();
      c.author = jc.at("author").get<std::string>();
      c.created = jc.at("created").get<std::int64_t>();
      c.text = jc.at("text").get<std::string>();
      bug.comments.push_back(std::move(c));
    }
    return bug;
  } catch (const nlohmann::json::exception& e) {
    throw StorageError(std::string("corrupt bug record: ") + e.what());
  }
}

BugStore::BugStore(std::filesystem::path data_dir, std::string project)
    : data_dir_(std::move(data_dir)), project_(std::move(project)) {
  if (project_.empty()) throw ValidationError("project name must not be empty");
  load();
}

std::filesystem::path BugStore::path() const { return data_dir_ / project_ / "bugs.ndrec"; }

bool BugStore::exists_on_disk() const { return std::filesystem::exists(path()); }

void BugStore::load() {
  bugs_.clear();
  if (!exists_on_disk()) return;
  std::ifstream in(path());
  if (!in) throw StorageError("cannot read " + path().string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    BugReport bug = deserialize_bug(line);
    const auto id = bug.bug_id;
    bugs_[id] = std::move(bug);
  }
}

void BugStore::flush() const {
  std::error_code ec;
  std::filesystem::create_directories(path().parent_path(), ec);
  if (ec) throw StorageError("cannot create " + path().parent_path().string() + ": " + ec.message());
  const auto tmp = path().string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + tmp);
    for (const auto& [id, bug] : bugs_) out << serialize_bug(bug) << '\n';
    out.flush();
    if (!out) throw StorageError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path(), ec);
  if (ec) throw StorageError("cannot replace " + path().string() + ": " + ec.message());
}

StoreResult BugStore::store_bugs(const std::vector<BugReport>& bugs) {
  StoreResult result;
  std::map<std::int64_t, BugReport> batch;
  for (const auto& bug : bugs) {
    if (bug.project != project_) {
      throw ValidationError("bug " + std::to_string(bug.bug_id) + " belongs to project '" +
                            bug.project + "', store is '" + project_ + "'");
    }
    if (batch.contains(bug.bug_id)) {
      result.warnings.push_back("duplicate bug " + std::to_string(bug.bug_id) +
                                " in batch; last record wins");
    }
    batch[bug.bug_id] = bug;
  }
  for (auto& [id, bug] : batch) bugs_[id] = std::move(bug);
  flush();
  result.stored = batch.size();
  return result;
}

std::vector<BugReport> BugStore::all_bugs() const {
  std::vector<BugReport> out;
  out.reserve(bugs_.size());
  for (const auto& [id, bug] : bugs_) out.push_back(bug);
  return out;
}

const BugReport* BugStore::find(std::int64_t bug_id) const {
  auto it = bugs_.find(bug_id);
  return it == bugs_.end() ? nullptr : &it->second;
}

namespace {

template <typename Pred>
std::vector<ResolvedComment> collect(const std::map<std::int64_t, BugReport>& bugs,
                                     const std::string& project, Pred keep) {
  std::vector<ResolvedComment> out;
  for (const auto& [id, bug] : bugs) {
    if (!keep(bug)) continue;
    for (const auto& c : bug.comments) {
      out.push_back({CommentRef{project, bug.bug_id, c.comment_id}, c});
    }
  }
  // bugs_ is keyed by bug_id and comments are stored by index, but a
  // record file edited by hand may not be; keep the ordering guarantee.
  std::sort(out.begin(), out.end(),
            [](const ResolvedComment& a, const ResolvedComment& b) { return a.ref < b.ref; });
  return out;
}

}  // namespace

std::vector<ResolvedComment> BugStore::resolved_comments() const {
  return collect(bugs_, project_, [](const BugReport& b) { return b.status.is_resolved(); });
}

std::vector<ResolvedComment> BugStore::all_comments() const {
  return collect(bugs_, project_, [](const BugReport&) { return true; });
}

}  // namespace corpus
}  // namespace retrorank

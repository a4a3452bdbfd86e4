// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "retrorank/comment_ref.h"

namespace retrorank::corpus {

enum class StatusKind {
  kUnconfirmed,
  kNew,
  kAssigned,
  kResolved,
  kVerified,
  kClosed,
  kOther,
};

/// Bugzilla bug_status. Unrecognized strings are kept verbatim as kOther.
class BugStatus {
 public:
  BugStatus() = default;
  explicit BugStatus(StatusKind kind) : kind_(kind) {}

  static BugStatus parse(std::string_view raw);
  static BugStatus other(std::string raw) {
    BugStatus s(StatusKind::kOther);
    s.raw_ = std::move(raw);
    return s;
  }

  StatusKind kind() const { return kind_; }
  std::string to_string() const;

  /// RESOLVED, VERIFIED or CLOSED.
  bool is_resolved() const {
    return kind_ == StatusKind::kResolved || kind_ == StatusKind::kVerified ||
           kind_ == StatusKind::kClosed;
  }

  bool operator==(const BugStatus&) const = default;

 private:
  StatusKind kind_ = StatusKind::kNew;
  std::string raw_;
};

enum class Priority { kUnknown, kP1, kP2, kP3, kP4 };

Priority parse_priority(std::string_view raw);
std::string_view priority_name(Priority p);

struct Comment {
  std::int64_t comment_id = 0;  // index in thread; 0 is the description
  std::string author;
  std::int64_t created = 0;  // UTC seconds
  std::string text;

  bool operator==(const Comment&) const = default;
};

struct BugReport {
  std::int64_t bug_id = 0;
  std::string project;
  std::string title;
  std::string description;
  BugStatus status;
  Priority priority = Priority::kUnknown;
  std::vector<Comment> comments;

  bool operator==(const BugReport&) const = default;
};

/// A <bug> that could not be turned into a BugReport.
struct RecordError {
  int bug_index = 0;  // position of the <bug> element in the document
  std::string message;
};

struct ParseResult {
  std::vector<BugReport> bugs;
  std::vector<RecordError> errors;
};

/// Parses a Bugzilla `show_bug.cgi?ctype=xml` export. Throws ParseError
/// (with line/column) on malformed XML; per-bug problems such as a missing
/// bug_id are collected in ParseResult::errors.
ParseResult parse_bugzilla_xml(std::string_view xml_text, const std::string& project);

/// Parses "YYYY-MM-DD hh:mm[:ss] [+hhmm|TZ]" into UTC seconds.
std::int64_t parse_bugzilla_time(std::string_view text);

/// One line of bugs.ndrec.
std::string serialize_bug(const BugReport& bug);
BugReport deserialize_bug(std::string_view line);

struct ResolvedComment {
  CommentRef ref;
  Comment comment;
};

struct StoreResult {
  std::size_t stored = 0;
  std::vector<std::string> warnings;
};

/// On-disk store for one project: `<data_dir>/<project>/bugs.ndrec`,
/// one JSON record per line, sorted by bug_id.
class BugStore {
 public:
  /// Opens (and loads, when present) the project's store.
  BugStore(std::filesystem::path data_dir, std::string project);

  const std::string& project() const { return project_; }
  std::filesystem::path path() const;
  bool exists_on_disk() const;

  /// Upserts by bug_id and rewrites the record file. Bugs whose project
  /// differs from the store's are rejected with ValidationError.
  StoreResult store_bugs(const std::vector<BugReport>& bugs);

  std::size_t size() const { return bugs_.size(); }
  std::vector<BugReport> all_bugs() const;
  const BugReport* find(std::int64_t bug_id) const;

  /// Comments of RESOLVED/VERIFIED/CLOSED bugs, in CommentRef order.
  std::vector<ResolvedComment> resolved_comments() const;

  /// Every comment of every bug, in CommentRef order.
  std::vector<ResolvedComment> all_comments() const;

 private:
  void load();
  void flush() const;

  std::filesystem::path data_dir_;
  std::string project_;
  std::map<std::int64_t, BugReport> bugs_;
};

}  // namespace retrorank::corpus

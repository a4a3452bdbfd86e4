// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#include <expat.h>

#include <charconv>
#include <ctime>
#include <string>
#include <string_view>
#include <vector>

#include "retrorank/corpus.h"
#include "retrorank/errors.h"

namespace retrorank::corpus {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// SAX state for one document. Only the fields RetroRank consumes are
// captured; everything else inside <bug> is skipped.
class BugzillaHandler {
 public:
  explicit BugzillaHandler(const std::string& project) : project_(project) {}

  ParseResult take() { return std::move(result_); }

  void start(std::string_view name, const XML_Char** attrs) {
    stack_.emplace_back(name);
    text_.clear();
    if (name == "bug") {
      in_bug_ = true;
      bug_ = BugReport{};
      bug_.project = project_;
      has_id_ = false;
      bug_error_.clear();
      for (int i = 0; attrs[i] != nullptr; i += 2) {
        if (std::string_view(attrs[i]) == "error") bug_error_ = attrs[i + 1];
      }
    } else if (name == "long_desc" && in_bug_) {
      in_comment_ = true;
      comment_ = Comment{};
      comment_.comment_id = static_cast<std::int64_t>(bug_.comments.size());
    }
  }

  void end(std::string_view name) {
    const std::string_view parent =
        stack_.size() >= 2 ? std::string_view(stack_[stack_.size() - 2]) : std::string_view();
    if (in_comment_ && parent == "long_desc") {
      if (name == "who") {
        comment_.author = std::string(trim(text_));
      } else if (name == "bug_when") {
        comment_.created = parse_bugzilla_time(text_);
      } else if (name == "thetext") {
        comment_.text = text_;
      }
    } else if (name == "long_desc" && in_comment_) {
      in_comment_ = false;
      bug_.comments.push_back(std::move(comment_));
    } else if (in_bug_ && parent == "bug") {
      if (name == "bug_id") {
        has_id_ = parse_int(text_, bug_.bug_id) && bug_.bug_id > 0;
      } else if (name == "short_desc") {
        bug_.title = std::string(trim(text_));
      } else if (name == "bug_status") {
        bug_.status = BugStatus::parse(trim(text_));
      } else if (name == "priority") {
        bug_.priority = parse_priority(trim(text_));
      }
    } else if (name == "bug" && in_bug_) {
      finish_bug();
    }
    stack_.pop_back();
    text_.clear();
  }

  void characters(std::string_view chunk) { text_.append(chunk); }

 private:
  void finish_bug() {
    in_bug_ = false;
    const int index = bug_index_++;
    if (!bug_error_.empty()) {
      result_.errors.push_back({index, "bug element carries error=\"" + bug_error_ + "\""});
      return;
    }
    if (!has_id_) {
      result_.errors.push_back({index, "bug element has no valid bug_id"});
      return;
    }
    if (!bug_.comments.empty()) bug_.description = bug_.comments.front().text;
    result_.bugs.push_back(std::move(bug_));
  }

  const std::string& project_;
  std::vector<std::string> stack_;
  std::string text_;
  bool in_bug_ = false;
  bool in_comment_ = false;
  bool has_id_ = false;
  std::string bug_error_;
  int bug_index_ = 0;
  BugReport bug_;
  Comment comment_;
  ParseResult result_;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  static_cast<BugzillaHandler*>(data)->start(name, attrs);
}

void XMLCALL on_end(void* data, const XML_Char* name) {
  static_cast<BugzillaHandler*>(data)->end(name);
}

void XMLCALL on_chars(void* data, const XML_Char* s, int len) {
  static_cast<BugzillaHandler*>(data)->characters(std::string_view(s, static_cast<std::size_t>(len)));
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

ParseResult parse_bugzilla_xml(std::string_view xml_text, const std::string& project) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");

  BugzillaHandler handler(project);
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_chars);

  // Feed in chunks; XML_Parse takes an int length.
  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  do {
    const std::size_t n = std::min(kChunk, xml_text.size() - offset);
    const bool last = offset + n == xml_text.size();
    if (XML_Parse(parser.get(), xml_text.data() + offset, static_cast<int>(n), last ? 1 : 0) ==
        XML_STATUS_ERROR) {
      const int line = static_cast<int>(XML_GetCurrentLineNumber(parser.get()));
      const int column = static_cast<int>(XML_GetCurrentColumnNumber(parser.get())) + 1;
      throw ParseError("malformed XML at " + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + XML_ErrorString(XML_GetErrorCode(parser.get())),
                       line, column);
    }
    offset += n;
  } while (offset < xml_text.size());

  return handler.take();
}

std::int64_t parse_bugzilla_time(std::string_view text) {
  text = trim(text);
  std::tm tm{};
  int offset_seconds = 0;
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  char tz[16] = {0};
  const std::string buf(text);
  const int fields = std::sscanf(buf.c_str(), "%d-%d-%d %d:%d:%d %15s", &year, &month, &day, &hour,
                                 &minute, &second, tz);
  if (fields < 3) return 0;
  if (fields == 5) {
    // "YYYY-MM-DD hh:mm TZ" (no seconds) is emitted by older exports.
    std::sscanf(buf.c_str(), "%*d-%*d-%*d %*d:%*d %15s", tz);
    second = 0;
  }
  const std::string_view zone(tz);
  if (zone.size() == 5 && (zone[0] == '+' || zone[0] == '-')) {
    const int hh = (zone[1] - '0') * 10 + (zone[2] - '0');
    const int mm = (zone[3] - '0') * 10 + (zone[4] - '0');
    offset_seconds = (hh * 3600 + mm * 60) * (zone[0] == '-' ? -1 : 1);
  }
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = second;
  return static_cast<std::int64_t>(timegm(&tm)) - offset_seconds;
}

}  // namespace retrorank::corpus

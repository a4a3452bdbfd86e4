// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace retrorank {

/// Addresses one comment of one bug: (project, bug_id, comment_id).
/// Ordered lexicographically on those three fields.
struct CommentRef {
  std::string project;
  std::int64_t bug_id = 0;
  std::int64_t comment_id = 0;

  auto operator<=>(const CommentRef&) const = default;
  bool operator==(const CommentRef&) const = default;

  /// "project:bug:comment"
  std::string to_string() const;

  /// Inverse of to_string(). Returns nullopt on malformed input.
  static std::optional<CommentRef> parse(std::string_view text);
};

struct CommentRefHash {
  std::size_t operator()(const CommentRef& ref) const noexcept {
    std::size_t h = std::hash<std::string>{}(ref.project);
    h ^= std::hash<std::int64_t>{}(ref.bug_id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(ref.comment_id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace retrorank

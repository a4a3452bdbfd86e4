// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

#include <stdexcept>
#include <string>

namespace retrorank {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

/// Missing or invalid configuration/resource file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Input rejected by a range or schema check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A pipeline stage was run before the stage it depends on.
class MissingStageError : public Error {
 public:
  using Error::Error;
};

}  // namespace retrorank

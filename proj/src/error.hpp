// Copyright 2026 The sandmine authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SANDMINE_ERROR_HPP
#define SANDMINE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sandmine {

enum class ErrorKind {
  Syntax,     // malformed input text
  Reference,  // dangling identifier
  Duplicate,  // duplicate id
  Dataset,    // dataset layout problems
  Io,         // file system
  InvalidArgument,
  Analysis,   // singular designs and other numeric failures
};

/// Error thrown by parsers, loaders and analyses. `line`/`column` are
/// 1-based and 0 when the error has no source location.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, int line = 0, int column = 0)
      : std::runtime_error(format(kind, message, line, column)),
        kind_(kind),
        line_(line),
        column_(column) {}

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            int line, int column) {
    std::string out;
    switch (kind) {
      case ErrorKind::Syntax: out = "syntax error"; break;
      case ErrorKind::Reference: out = "reference error"; break;
      case ErrorKind::Duplicate: out = "duplicate error"; break;
      case ErrorKind::Dataset: out = "dataset error"; break;
      case ErrorKind::Io: out = "io error"; break;
      case ErrorKind::InvalidArgument: out = "invalid argument"; break;
      case ErrorKind::Analysis: out = "analysis error"; break;
    }
    if (line > 0) {
      out += " at line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
    }
    out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  int line_;
  int column_;
};

}  // namespace sandmine

#endif  // SANDMINE_ERROR_HPP

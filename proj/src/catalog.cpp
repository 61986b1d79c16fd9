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

#include "catalog.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"

namespace sandmine {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

SensitiveCatalog SensitiveCatalog::from_text(const std::string& text) {
  SensitiveCatalog catalog;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::string api, keyword, extra;
    if (!(fields >> api)) continue;  // blank or comment-only line
    if (!(fields >> keyword)) {
      throw Error(ErrorKind::Syntax, "missing class keyword for '" + api + "'",
                  lineno);
    }
    if (fields >> extra) {
      throw Error(ErrorKind::Syntax, "trailing token '" + extra + "'", lineno);
    }
    SensitivityClass cls;
    if (keyword == "source") {
      cls = SensitivityClass::SourceOnly;
    } else if (keyword == "sink") {
      cls = SensitivityClass::SinkOnly;
    } else if (keyword == "both") {
      cls = SensitivityClass::SourceAndSink;
    } else if (keyword == "sensitive") {
      cls = SensitivityClass::SensitiveNeither;
    } else {
      throw Error(ErrorKind::Syntax,
                  "unknown class keyword '" + keyword +
                      "' (expected source, sink, both or sensitive)",
                  lineno);
    }
    if (!catalog.entries_.emplace(api, cls).second) {
      throw Error(ErrorKind::Duplicate, "API '" + api + "' listed twice",
                  lineno);
    }
  }
  if (catalog.entries_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "catalog is empty");
  }
  return catalog;
}

SensitiveCatalog SensitiveCatalog::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

bool SensitiveCatalog::is_source(const ApiId& api) const {
  auto it = entries_.find(api);
  return it != entries_.end() && (it->second == SensitivityClass::SourceOnly ||
                                  it->second == SensitivityClass::SourceAndSink);
}

bool SensitiveCatalog::is_sink(const ApiId& api) const {
  auto it = entries_.find(api);
  return it != entries_.end() && (it->second == SensitivityClass::SinkOnly ||
                                  it->second == SensitivityClass::SourceAndSink);
}

SensitivityClass SensitiveCatalog::class_of(const ApiId& api) const {
  auto it = entries_.find(api);
  if (it == entries_.end()) {
    throw Error(ErrorKind::Reference, "API '" + api + "' is not in the catalog");
  }
  return it->second;
}

std::set<ApiId> SensitiveCatalog::api_set() const {
  std::set<ApiId> out;
  for (const auto& [api, cls] : entries_) out.insert(api);
  return out;
}

std::string to_keyword(SensitivityClass c) {
  switch (c) {
    case SensitivityClass::SourceOnly: return "source";
    case SensitivityClass::SinkOnly: return "sink";
    case SensitivityClass::SourceAndSink: return "both";
    case SensitivityClass::SensitiveNeither: return "sensitive";
  }
  return "sensitive";
}

}  // namespace sandmine

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

#ifndef SANDMINE_CATALOG_HPP
#define SANDMINE_CATALOG_HPP

#include <map>
#include <set>
#include <string>

namespace sandmine {

using ApiId = std::string;

/// Role of a sensitive API. Every cataloged API is "sensitive" for sandbox
/// mining; the source/sink facet only matters to the taint engine.
enum class SensitivityClass {
  SourceOnly,
  SinkOnly,
  SourceAndSink,
  SensitiveNeither,
};

/// The configurable sensitive-API list. One entry per API identifier;
/// immutable after load and safe to share between threads.
class SensitiveCatalog {
 public:
  /// Parses catalog text: one `<ApiId> <source|sink|both|sensitive>` entry
  /// per line, `#` starts a comment. Throws on duplicates, unknown class
  /// keywords, or an empty catalog.
  static SensitiveCatalog from_text(const std::string& text);
  static SensitiveCatalog from_file(const std::string& path);

  bool is_sensitive(const ApiId& api) const {
    return entries_.count(api) != 0;
  }
  bool is_source(const ApiId& api) const;
  bool is_sink(const ApiId& api) const;

  /// Class of a cataloged API; throws if `api` is not listed.
  SensitivityClass class_of(const ApiId& api) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<ApiId, SensitivityClass>& entries() const { return entries_; }
  std::set<ApiId> api_set() const;

 private:
  std::map<ApiId, SensitivityClass> entries_;
};

std::string to_keyword(SensitivityClass c);

}  // namespace sandmine

#endif  // SANDMINE_CATALOG_HPP

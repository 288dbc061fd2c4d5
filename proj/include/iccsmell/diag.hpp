/*
 * Copyright (C) 2026 The iccsmell Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace iccsmell {

/// A 1-based position inside an input file.
struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceLocation& a, const SourceLocation& b) {
    return a.file == b.file && a.line == b.line && a.column == b.column;
  }
  friend bool operator<(const SourceLocation& a, const SourceLocation& b) {
    return std::tie(a.file, a.line, a.column) <
           std::tie(b.file, b.line, b.column);
  }
};

enum class Severity { info, warning, error };

std::string_view severity_id(Severity s);
Severity severity_from_id(std::string_view id);

/// A non-fatal note produced while parsing or analyzing. Analysis never
/// aborts on a Diagnostic; fatal conditions use the exception types below.
struct Diagnostic {
  SourceLocation location;
  Severity severity = Severity::warning;
  std::string code;  // stable machine-readable tag, e.g. "unresolved_reference"
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.location == b.location && a.severity == b.severity &&
           a.code == b.code && a.message == b.message;
  }
};

struct MalformedXml : std::runtime_error {
  MalformedXml(SourceLocation position, const std::string& reason)
      : std::runtime_error(position.file + ":" + std::to_string(position.line) +
                           ":" + std::to_string(position.column) +
                           ": malformed XML: " + reason),
        position(std::move(position)),
        reason(reason) {}
  SourceLocation position;
  std::string reason;
};

struct MissingManifestRoot : std::runtime_error {
  explicit MissingManifestRoot(const std::string& file)
      : std::runtime_error(file + ": root element is not <manifest>") {}
};

struct NoManifestFound : std::runtime_error {
  explicit NoManifestFound(const std::string& root)
      : std::runtime_error("no AndroidManifest.xml found under " + root) {}
};

struct MalformedReport : std::runtime_error {
  explicit MalformedReport(const std::string& reason)
      : std::runtime_error("malformed report: " + reason) {}
};

struct EmptyCorpus : std::runtime_error {
  EmptyCorpus() : std::runtime_error("corpus contains no reports") {}
};

struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& reason)
      : std::runtime_error("degenerate input: " + reason) {}
};

}  // namespace iccsmell

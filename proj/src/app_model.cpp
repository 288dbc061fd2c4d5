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

#include "iccsmell/app_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace iccsmell {

namespace fs = std::filesystem;

namespace {

bool has_segment(const fs::path& rel, std::string_view segment) {
  for (const auto& part : rel) {
    if (part.string() == segment) return true;
  }
  return false;
}

size_t path_depth(const fs::path& rel) {
  return static_cast<size_t>(std::distance(rel.begin(), rel.end()));
}

bool read_file(const fs::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return false;
  out = buf.str();
  return true;
}

}  // namespace

AppModel build_app_model(const fs::path& project_root) {
  AppModel app;

  std::vector<std::string> manifests;
  std::vector<std::string> strings_files;
  std::vector<std::string> sources;
  std::vector<std::string> kotlin_sources;
  std::vector<std::string> unreadable;

  std::error_code ec;
  for (fs::recursive_directory_iterator
           it(project_root, fs::directory_options::skip_permission_denied, ec),
       end;
       it != end; it.increment(ec)) {
    if (ec) break;
    fs::path rel = it->path().lexically_relative(project_root);
    std::string rel_str = rel.generic_string();
    std::string filename = it->path().filename().string();

    if (has_segment(rel.parent_path(), "build") ||
        has_segment(rel.parent_path(), "test")) {
      continue;
    }

    bool is_manifest = filename == "AndroidManifest.xml";
    bool in_source_root = has_segment(rel.parent_path(), "java") ||
                          has_segment(rel.parent_path(), "src");
    bool is_java = in_source_root && rel_str.size() > 5 &&
                   rel_str.rfind(".java") == rel_str.size() - 5;
    bool is_kotlin = in_source_root && rel_str.size() > 3 &&
                     rel_str.rfind(".kt") == rel_str.size() - 3;
    bool is_strings = filename == "strings.xml" &&
                      rel_str.find("res/values/") != std::string::npos;

    if (!is_manifest && !is_java && !is_kotlin && !is_strings) continue;

    if (!it->is_regular_file(ec)) {
      if (is_manifest || is_java) unreadable.push_back(rel_str);
      continue;
    }
    if (is_manifest) manifests.push_back(rel_str);
    else if (is_java) sources.push_back(rel_str);
    else if (is_kotlin) kotlin_sources.push_back(rel_str);
    else if (is_strings) strings_files.push_back(rel_str);
  }

  if (manifests.empty()) throw NoManifestFound(project_root.string());

  auto by_depth = [](const std::string& a, const std::string& b) {
    size_t da = path_depth(fs::path(a));
    size_t db = path_depth(fs::path(b));
    return std::tie(da, a) < std::tie(db, b);
  };
  std::sort(manifests.begin(), manifests.end(), by_depth);
  std::sort(strings_files.begin(), strings_files.end(), by_depth);
  std::sort(sources.begin(), sources.end());
  std::sort(kotlin_sources.begin(), kotlin_sources.end());
  std::sort(unreadable.begin(), unreadable.end());

  for (size_t i = 1; i < manifests.size(); ++i) {
    app.diagnostics.push_back({{manifests[i], 1, 1},
                               Severity::info,
                               "extra_manifest",
                               "additional manifest ignored; analyzing " +
                                   manifests[0]});
  }

  StringResources resources;
  bool have_resources = false;
  if (!strings_files.empty()) {
    std::string bytes;
    if (read_file(project_root / strings_files[0], bytes)) {
      try {
        resources = parse_string_resources(bytes, strings_files[0]);
        have_resources = true;
      } catch (const MalformedXml& e) {
        app.diagnostics.push_back({e.position, Severity::warning,
                                   "malformed_strings_xml", e.reason});
      }
    } else {
      unreadable.push_back(strings_files[0]);
    }
  }

  {
    std::string bytes;
    if (!read_file(project_root / manifests[0], bytes)) {
      throw NoManifestFound(project_root.string() + " (manifest unreadable)");
    }
    app.manifest = parse_manifest(bytes, manifests[0],
                                  have_resources ? &resources : nullptr);
  }

  for (const std::string& rel : sources) {
    std::string bytes;
    if (!read_file(project_root / rel, bytes)) {
      unreadable.push_back(rel);
      continue;
    }
    app.units.push_back(parse_source_unit(bytes, rel));
  }

  for (const std::string& rel : kotlin_sources) {
    app.diagnostics.push_back({{rel, 1, 1},
                               Severity::info,
                               "kotlin_skipped",
                               "Kotlin sources are not analyzed"});
  }
  for (const std::string& rel : unreadable) {
    app.diagnostics.push_back({{rel, 1, 1},
                               Severity::warning,
                               "unreadable_file",
                               "file could not be read; skipped"});
  }
  if (have_resources) {
    for (auto& d : resources.diagnostics) app.diagnostics.push_back(std::move(d));
  }
  for (auto& d : app.manifest.diagnostics) app.diagnostics.push_back(d);

  return app;
}

}  // namespace iccsmell

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

#include <filesystem>
#include <vector>

#include "iccsmell/manifest.hpp"
#include "iccsmell/source_model.hpp"

namespace iccsmell {

/// Complete syntactic model of one app project: the manifest plus every
/// discovered source unit. Immutable once built.
struct AppModel {
  ManifestModel manifest;
  std::vector<SourceUnit> units;
  std::vector<Diagnostic> diagnostics;
};

/// Discovers and parses an app under `project_root`. File paths in the model
/// are relative to the root. Manifest: every AndroidManifest.xml not under a
/// `build` or `test` path segment; ties broken by path depth then
/// lexicographically, extras recorded as diagnostics. Sources: *.java under
/// any `java` or `src` segment outside build/test; unreadable files and
/// Kotlin sources become diagnostics, never errors.
/// Throws NoManifestFound; manifest XML errors propagate.
AppModel build_app_model(const std::filesystem::path& project_root);

}  // namespace iccsmell

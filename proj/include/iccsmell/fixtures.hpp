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
#include <string>
#include <vector>

namespace iccsmell::fixtures {

struct FixtureFile {
  std::string relative_path;
  std::string content;
};

/// One self-contained project. `expected.json` inside `files` is the ground
/// truth findings manifest the analyzer must reproduce exactly.
struct Fixture {
  std::string name;
  std::vector<FixtureFile> files;
};

/// The bundled corpus: for every smell at least one vulnerable project and
/// one benign twin.
const std::vector<Fixture>& corpus();

/// Writes the corpus under `dir`, one subdirectory per fixture.
void materialize(const std::filesystem::path& dir);

struct SelfCheckResult {
  std::string fixture;
  bool passed = false;
  std::string detail;  // mismatch description or error, empty when passed
};

/// Analyzes every fixture with the default configuration and compares the
/// findings against its expected.json.
std::vector<SelfCheckResult> self_check();

/// Same check over an already-materialized corpus directory: every
/// subdirectory holding an expected.json is analyzed and compared against it.
std::vector<SelfCheckResult> self_check_dir(const std::filesystem::path& dir);

}  // namespace iccsmell::fixtures

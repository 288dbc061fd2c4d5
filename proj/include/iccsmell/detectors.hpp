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

#include <iosfwd>
#include <set>

#include "iccsmell/app_model.hpp"
#include "iccsmell/smells.hpp"

namespace iccsmell {

struct DetectorConfig {
  std::set<Smell> enabled{kAllSmells.begin(), kAllSmells.end()};
  Confidence min_confidence = Confidence::low;
  // When set, SM01 reports every grant even if a revocation exists somewhere.
  bool sm01_strict = false;

  /// Parses a key=value config: `enable=SM01,SM02`, `min_confidence=low|
  /// medium|high`, `sm01_strict=true|false`. Unknown keys and values are
  /// reported as diagnostics and skipped.
  static DetectorConfig parse(std::istream& in, std::vector<Diagnostic>* diags);
};

// Detectors are pure and total: a well-formed AppModel in, findings out.
std::vector<Finding> detect_sm01(const AppModel& app, bool strict = false);
std::vector<Finding> detect_sm02(const AppModel& app);
std::vector<Finding> detect_sm03(const AppModel& app);
std::vector<Finding> detect_sm04(const AppModel& app);
std::vector<Finding> detect_sm05(const AppModel& app);
std::vector<Finding> detect_sm06(const AppModel& app);
std::vector<Finding> detect_sm07(const AppModel& app);
std::vector<Finding> detect_sm08(const AppModel& app);
std::vector<Finding> detect_sm09(const AppModel& app);
std::vector<Finding> detect_sm10(const AppModel& app);
std::vector<Finding> detect_sm11(const AppModel& app,
                                 std::vector<Diagnostic>* diags = nullptr);
std::vector<Finding> detect_sm12(const AppModel& app);

/// Runs the enabled detectors, filters by minimum confidence and returns the
/// union sorted by (file, line, column, smell id). Analysis notes (e.g.
/// pending-intent arrays) are appended to `diags` when given.
std::vector<Finding> run_all(const AppModel& app, const DetectorConfig& config,
                             std::vector<Diagnostic>* diags = nullptr);

}  // namespace iccsmell

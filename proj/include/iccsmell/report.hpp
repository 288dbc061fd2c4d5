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

#include <map>
#include <string>

#include "iccsmell/app_model.hpp"
#include "iccsmell/smells.hpp"

namespace iccsmell {

/// Analysis result for one app: findings plus the diagnostics gathered while
/// building the model.
struct Report {
  std::string app_id;
  std::vector<Finding> findings;
  std::vector<Diagnostic> diagnostics;
  std::map<Smell, int> per_smell_counts;  // always all twelve keys
  int distinct_smell_categories = 0;

  friend bool operator==(const Report& a, const Report& b) {
    return a.app_id == b.app_id && a.findings == b.findings &&
           a.diagnostics == b.diagnostics &&
           a.per_smell_counts == b.per_smell_counts &&
           a.distinct_smell_categories == b.distinct_smell_categories;
  }
};

/// Assembles a Report from an analyzed model. `extra_diags` carries
/// detector-emitted notes; model and unit diagnostics are merged in.
Report build_report(const AppModel& app, std::vector<Finding> findings,
                    std::vector<Diagnostic> extra_diags = {});

/// Human-readable rendering; one block per finding, deterministic order.
std::string render_text(const Report& report);

/// Stable machine-readable rendering: fixed key order, UTF-8, byte-identical
/// across runs for equal reports.
std::string render_json(const Report& report);

/// XML rendering mirroring the JSON schema.
std::string render_xml(const Report& report);

/// Inverse of render_json. Unknown extra keys are ignored with a warning
/// diagnostic appended to the returned report. Throws MalformedReport on
/// schema violations.
Report parse_report(std::string_view bytes);

}  // namespace iccsmell

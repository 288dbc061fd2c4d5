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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iccsmell/diag.hpp"

namespace iccsmell {

enum class Smell {
  SM01,  // Persisted Dynamic Permission
  SM02,  // Custom Scheme Channel
  SM03,  // Incorrect Protection Level
  SM04,  // Unauthorized Intent
  SM05,  // Sticky Broadcast
  SM06,  // Slack WebViewClient
  SM07,  // Broken Service Permission
  SM08,  // Insecure Path Permission
  SM09,  // Broken Path Permission Precedence
  SM10,  // Unprotected Broadcast Receiver
  SM11,  // Implicit Pending Intent
  SM12,  // Common Task Affinity
};

inline constexpr std::array<Smell, 12> kAllSmells = {
    Smell::SM01, Smell::SM02, Smell::SM03, Smell::SM04,
    Smell::SM05, Smell::SM06, Smell::SM07, Smell::SM08,
    Smell::SM09, Smell::SM10, Smell::SM11, Smell::SM12,
};

std::string_view smell_id(Smell s);                       // "SM01".."SM12"
std::optional<Smell> smell_from_id(std::string_view id);

struct SmellInfo {
  Smell id;
  std::string_view title;
  std::string_view description;
  std::string_view mitigation;
};

const SmellInfo& smell_info(Smell s);

enum class ThreatClass { denial_of_service, intent_spoofing, intent_hijacking };

inline constexpr std::array<ThreatClass, 3> kAllThreats = {
    ThreatClass::denial_of_service,
    ThreatClass::intent_spoofing,
    ThreatClass::intent_hijacking,
};

std::string_view threat_id(ThreatClass t);
std::string_view threat_description(ThreatClass t);

/// Threat classes associated with a smell; a compiled-in constant table.
const std::vector<ThreatClass>& map_threats(Smell s);

enum class Confidence { low, medium, high };

std::string_view confidence_id(Confidence c);
std::optional<Confidence> confidence_from_id(std::string_view id);

/// One smell occurrence. Built through make_finding so the threat classes
/// and mitigation always match the catalog.
struct Finding {
  Smell smell = Smell::SM01;
  SourceLocation location;
  Confidence confidence = Confidence::high;
  std::string message;
  std::vector<ThreatClass> threat_classes;
  std::string mitigation_hint;

  friend bool operator==(const Finding& a, const Finding& b) {
    return a.smell == b.smell && a.location == b.location &&
           a.confidence == b.confidence && a.message == b.message;
  }
};

Finding make_finding(Smell smell, SourceLocation location, Confidence confidence,
                     std::string message);

/// Sort key used everywhere findings are emitted:
/// (file, line, column, smell id).
bool finding_order(const Finding& a, const Finding& b);

}  // namespace iccsmell

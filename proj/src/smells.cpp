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

#include "iccsmell/smells.hpp"

#include <map>
#include <tuple>

namespace iccsmell {

std::string_view severity_id(Severity s) {
  switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
  }
  return "warning";
}

Severity severity_from_id(std::string_view id) {
  if (id == "info") return Severity::info;
  if (id == "error") return Severity::error;
  return Severity::warning;
}

namespace {

const std::array<SmellInfo, 12> kCatalog = {{
    {Smell::SM01, "Persisted Dynamic Permission",
     "A URI permission is granted at run time but never revoked, so the "
     "grantee keeps access longer than intended.",
     "Revoke granted URI permissions as soon as they are no longer needed, "
     "or attach the data to the intent instead of exposing a URI."},
    {Smell::SM02, "Custom Scheme Channel",
     "The app registers a handler for a URI scheme. Any app can register the "
     "same scheme and intercept those URIs together with any data they carry.",
     "Never put tokens or other sensitive data into scheme URIs; prefer "
     "system schemes with restricted recipients over custom ones."},
    {Smell::SM03, "Incorrect Protection Level",
     "A custom permission is declared without a protection level, so the "
     "default grant policy applies and other apps can obtain it silently.",
     "Declare an explicit protection level; guard sensitive features with "
     "\"dangerous\" or \"signature\"."},
    {Smell::SM04, "Unauthorized Intent",
     "An implicit intent is dispatched without a receiver permission, so any "
     "registered app can receive it and read or relay its data.",
     "Use explicit intents for sensitive payloads, attach a permission to "
     "broadcasts, and validate all data received from other components."},
    {Smell::SM05, "Sticky Broadcast",
     "Sticky broadcasts stay deliverable after being sent and can be read "
     "and rebroadcast in modified form by any app holding the permission.",
     "Do not use sticky broadcasts; send a regular broadcast to signal a "
     "change and let clients fetch the current value on demand."},
    {Smell::SM06, "Slack WebViewClient",
     "A WebViewClient accepts every URL it is asked to load, so the WebView "
     "can be steered to hostile pages.",
     "Validate URLs in shouldOverrideUrlLoading against an allowlist of "
     "trusted hosts, or consult a safe-browsing service before loading."},
    {Smell::SM07, "Broken Service Permission",
     "A started service checks its own permissions instead of the caller's, "
     "letting less-privileged callers act through the service.",
     "Verify callers with checkCallingPermission or checkCallingUriPermission "
     "before doing privileged work, and declare the required permission on "
     "the service."},
    {Smell::SM08, "Insecure Path Permission",
     "UriMatcher collapses double slashes that the framework's path "
     "permission check treats as distinct, so crafted URIs can bypass "
     "path-permission protection.",
     "Match URIs with a comparison that rejects or normalizes duplicate "
     "slashes instead of relying on UriMatcher."},
    {Smell::SM09, "Broken Path Permission Precedence",
     "A provider-level permission silently takes precedence over its "
     "path-permission entries, so per-path restrictions are not enforced.",
     "Use a dedicated provider with its own permission per protected path "
     "instead of path-permission entries."},
    {Smell::SM10, "Unprotected Broadcast Receiver",
     "A receiver is registered without a broadcaster permission, so any app "
     "can trigger it with forged broadcasts.",
     "Register receivers with a permission the sender must hold, or use "
     "LocalBroadcastManager for app-internal messages."},
    {Smell::SM11, "Implicit Pending Intent",
     "A pending intent wraps an implicit intent; an interceptor can redeem "
     "it and send intents with this app's identity and permissions.",
     "Always build pending intents around explicit intents that name the "
     "target component."},
    {Smell::SM12, "Common Task Affinity",
     "The activity keeps a non-empty task affinity, so other apps declaring "
     "the same affinity can overlay or reorder its UI.",
     "Set android:taskAffinity=\"\" at the application level and assign "
     "affinities only to activities that must share a task."},
}};

const std::map<Smell, std::vector<ThreatClass>>& threat_table() {
  using T = ThreatClass;
  static const std::map<Smell, std::vector<ThreatClass>> kTable = {
      {Smell::SM01, {T::denial_of_service}},
      {Smell::SM02, {T::denial_of_service, T::intent_spoofing, T::intent_hijacking}},
      {Smell::SM03, {T::denial_of_service, T::intent_spoofing, T::intent_hijacking}},
      {Smell::SM04, {T::denial_of_service, T::intent_spoofing, T::intent_hijacking}},
      {Smell::SM05, {T::intent_spoofing, T::intent_hijacking}},
      {Smell::SM06, {T::denial_of_service}},
      {Smell::SM07, {T::denial_of_service, T::intent_spoofing}},
      {Smell::SM08, {T::intent_spoofing}},
      {Smell::SM09, {T::intent_spoofing}},
      {Smell::SM10, {T::denial_of_service, T::intent_spoofing, T::intent_hijacking}},
      {Smell::SM11, {T::intent_spoofing, T::intent_hijacking}},
      {Smell::SM12, {T::denial_of_service}},
  };
  return kTable;
}

}  // namespace

std::string_view smell_id(Smell s) {
  static const std::array<std::string_view, 12> kIds = {
      "SM01", "SM02", "SM03", "SM04", "SM05", "SM06",
      "SM07", "SM08", "SM09", "SM10", "SM11", "SM12"};
  return kIds[static_cast<size_t>(s)];
}

std::optional<Smell> smell_from_id(std::string_view id) {
  for (Smell s : kAllSmells) {
    if (smell_id(s) == id) return s;
  }
  return std::nullopt;
}

const SmellInfo& smell_info(Smell s) { return kCatalog[static_cast<size_t>(s)]; }

std::string_view threat_id(ThreatClass t) {
  switch (t) {
    case ThreatClass::denial_of_service: return "denial_of_service";
    case ThreatClass::intent_spoofing: return "intent_spoofing";
    case ThreatClass::intent_hijacking: return "intent_hijacking";
  }
  return "denial_of_service";
}

std::string_view threat_description(ThreatClass t) {
  switch (t) {
    case ThreatClass::denial_of_service:
      return "a hostile app drives the victim into an unavailable state, "
             "typically through unchecked failures";
    case ThreatClass::intent_spoofing:
      return "a hostile app sends forged intents to a receiver that does not "
             "expect intents from it";
    case ThreatClass::intent_hijacking:
      return "a hostile app registered for the same intents intercepts them "
             "before the intended recipient";
  }
  return "";
}

const std::vector<ThreatClass>& map_threats(Smell s) {
  return threat_table().at(s);
}

std::string_view confidence_id(Confidence c) {
  switch (c) {
    case Confidence::low: return "low";
    case Confidence::medium: return "medium";
    case Confidence::high: return "high";
  }
  return "low";
}

std::optional<Confidence> confidence_from_id(std::string_view id) {
  if (id == "low") return Confidence::low;
  if (id == "medium") return Confidence::medium;
  if (id == "high") return Confidence::high;
  return std::nullopt;
}

Finding make_finding(Smell smell, SourceLocation location, Confidence confidence,
                     std::string message) {
  Finding f;
  f.smell = smell;
  f.location = std::move(location);
  f.confidence = confidence;
  f.message = std::move(message);
  f.threat_classes = map_threats(smell);
  f.mitigation_hint = std::string(smell_info(smell).mitigation);
  return f;
}

bool finding_order(const Finding& a, const Finding& b) {
  return std::tie(a.location.file, a.location.line, a.location.column, a.smell) <
         std::tie(b.location.file, b.location.line, b.location.column, b.smell);
}

}  // namespace iccsmell

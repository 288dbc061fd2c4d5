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

#include "iccsmell/detectors.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>

namespace iccsmell {

namespace {

constexpr std::string_view kStickyPermission = "android.permission.BROADCAST_STICKY";

const std::set<std::string, std::less<>>& standard_schemes() {
  static const std::set<std::string, std::less<>> kSchemes = {
      "http", "https", "file",  "content", "ftp",   "tel",
      "mailto", "geo", "sms", "smsto",   "market"};
  return kSchemes;
}

template <typename Fn>
void for_each_call(const AppModel& app, Fn&& fn) {
  for (const SourceUnit& unit : app.units) {
    for (const CallSite& call : unit.call_sites) fn(unit, call);
  }
}

bool any_call_named(const AppModel& app, std::string_view name) {
  for (const SourceUnit& unit : app.units) {
    for (const CallSite& call : unit.call_sites) {
      if (call.method_name == name) return true;
    }
  }
  return false;
}

bool arg_is_constant_string(const CallSite& call, size_t index) {
  if (index >= call.argument_summaries.size()) return false;
  const ArgSummary& arg = call.argument_summaries[index];
  return arg.const_value && arg.const_value->kind == ConstKind::string;
}

bool arg_is_null(const CallSite& call, size_t index) {
  if (index >= call.argument_summaries.size()) return false;
  const ArgSummary& arg = call.argument_summaries[index];
  if (arg.is_null_literal) return true;
  return arg.const_value && arg.const_value->kind == ConstKind::null_value;
}

IntentClass intent_class_of(const CallSite& call, size_t index) {
  if (index >= call.argument_summaries.size()) return IntentClass::unknown;
  return call.argument_summaries[index].intent_class.value_or(
      IntentClass::unknown);
}

}  // namespace

DetectorConfig DetectorConfig::parse(std::istream& in,
                                     std::vector<Diagnostic>* diags) {
  DetectorConfig config;
  auto note = [&](int line, std::string code, std::string message) {
    if (diags)
      diags->push_back({{"<config>", line, 1}, Severity::warning,
                        std::move(code), std::move(message)});
  };
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto trim = [](std::string& s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      note(line_no, "config_syntax", "expected key=value: \"" + raw + "\"");
      continue;
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    trim(key);
    trim(value);
    if (key == "enable") {
      config.enabled.clear();
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        trim(item);
        if (item.empty()) continue;
        if (auto smell = smell_from_id(item)) {
          config.enabled.insert(*smell);
        } else {
          note(line_no, "config_value", "unknown smell id \"" + item + "\"");
        }
      }
    } else if (key == "min_confidence") {
      if (auto c = confidence_from_id(value)) {
        config.min_confidence = *c;
      } else {
        note(line_no, "config_value", "unknown confidence \"" + value + "\"");
      }
    } else if (key == "sm01_strict") {
      if (value == "true") config.sm01_strict = true;
      else if (value == "false") config.sm01_strict = false;
      else note(line_no, "config_value", "sm01_strict must be true or false");
    } else {
      note(line_no, "config_key", "unknown key \"" + key + "\"");
    }
  }
  return config;
}

std::vector<Finding> detect_sm01(const AppModel& app, bool strict) {
  std::vector<Finding> findings;
  bool revoked = any_call_named(app, "revokeUriPermission");
  if (revoked && !strict) return findings;
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (call.method_name != "grantUriPermission") return;
    if (call.receiver_kind != ReceiverKind::context_like) return;
    findings.push_back(make_finding(
        Smell::SM01, call.location, Confidence::high,
        "grantUriPermission() has no matching revokeUriPermission() anywhere "
        "in the app"));
  });
  return findings;
}

std::vector<Finding> detect_sm02(const AppModel& app) {
  std::vector<Finding> findings;
  for (const ComponentDecl& component : app.manifest.components) {
    for (const IntentFilterDecl& filter : component.intent_filters) {
      for (const std::string& scheme : filter.schemes) {
        bool standard = standard_schemes().count(scheme) > 0;
        findings.push_back(make_finding(
            Smell::SM02,
            {app.manifest.source_path, filter.location.line,
             filter.location.column},
            standard ? Confidence::low : Confidence::high,
            std::string("intent filter handles ") +
                (standard ? "standard" : "custom") + " URI scheme \"" + scheme +
                "\""));
      }
    }
  }
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (call.method_name != "addDataScheme") return;
    if (call.receiver_kind != ReceiverKind::intent_filter) return;
    std::string message = "addDataScheme() registers a URI scheme";
    Confidence confidence = Confidence::high;
    if (arg_is_constant_string(call, 0)) {
      const std::string& scheme = call.argument_summaries[0].const_value->string_value;
      bool standard = standard_schemes().count(scheme) > 0;
      confidence = standard ? Confidence::low : Confidence::high;
      message = std::string("addDataScheme() registers ") +
                (standard ? "standard" : "custom") + " URI scheme \"" + scheme +
                "\"";
    }
    findings.push_back(
        make_finding(Smell::SM02, call.location, confidence, std::move(message)));
  });
  return findings;
}

std::vector<Finding> detect_sm03(const AppModel& app) {
  std::vector<Finding> findings;
  for (const PermissionDecl& permission : app.manifest.permissions_declared) {
    if (permission.protection_level) continue;
    findings.push_back(make_finding(
        Smell::SM03,
        {app.manifest.source_path, permission.location.line,
         permission.location.column},
        Confidence::high,
        "custom permission \"" + permission.name +
            "\" declares no protectionLevel"));
  }
  return findings;
}

std::vector<Finding> detect_sm04(const AppModel& app) {
  // receiverPermission argument position per dispatch method; -1 = none.
  static const std::vector<std::pair<std::string_view, int>> kDispatchers = {
      {"startActivity", -1},
      {"sendBroadcast", 1},
      {"sendOrderedBroadcast", 1},
      {"sendBroadcastAsUser", 2},
      {"sendOrderedBroadcastAsUser", 2},
  };
  std::vector<Finding> findings;
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (call.receiver_kind != ReceiverKind::context_like) return;
    int permission_index = -2;
    for (const auto& [name, index] : kDispatchers) {
      if (call.method_name == name) {
        permission_index = index;
        break;
      }
    }
    if (permission_index == -2) return;
    if (permission_index >= 0 &&
        arg_is_constant_string(call, static_cast<size_t>(permission_index))) {
      return;  // broadcast guarded by a receiver permission
    }
    switch (intent_class_of(call, 0)) {
      case IntentClass::explicit_target:
        return;
      case IntentClass::implicit:
        findings.push_back(make_finding(
            Smell::SM04, call.location, Confidence::high,
            call.method_name +
                "() dispatches an implicit intent without a receiver "
                "permission"));
        return;
      case IntentClass::unknown:
        findings.push_back(make_finding(
            Smell::SM04, call.location, Confidence::low,
            call.method_name +
                "() dispatches an intent whose target could not be "
                "determined"));
        return;
    }
  });
  return findings;
}

std::vector<Finding> detect_sm05(const AppModel& app) {
  static const std::set<std::string, std::less<>> kStickyCalls = {
      "sendStickyBroadcast",        "sendStickyBroadcastAsUser",
      "sendStickyOrderedBroadcast", "sendStickyOrderedBroadcastAsUser",
      "removeStickyBroadcast",      "removeStickyBroadcastAsUser"};
  std::vector<Finding> findings;
  bool any_sticky_call = false;
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (!kStickyCalls.count(call.method_name)) return;
    if (call.receiver_kind != ReceiverKind::context_like) return;
    any_sticky_call = true;
    findings.push_back(make_finding(
        Smell::SM05, call.location, Confidence::high,
        call.method_name +
            "() uses a sticky broadcast that any app can observe and modify"));
  });
  if (!any_sticky_call) {
    for (const UsesPermission& used : app.manifest.permissions_used) {
      if (used.name != kStickyPermission) continue;
      findings.push_back(make_finding(
          Smell::SM05,
          {app.manifest.source_path, used.location.line, used.location.column},
          Confidence::low,
          "BROADCAST_STICKY is requested but no sticky broadcast call was "
          "found"));
    }
  }
  return findings;
}

std::vector<Finding> detect_sm06(const AppModel& app) {
  std::vector<Finding> findings;
  bool any_override = false;
  for (const SourceUnit& unit : app.units) {
    for (const TypeDecl& type : unit.type_decls) {
      bool is_client = std::find(type.supertypes.begin(), type.supertypes.end(),
                                 "WebViewClient") != type.supertypes.end();
      if (!is_client) continue;
      for (const MethodDecl& method : type.methods) {
        if (method.name == "shouldOverrideUrlLoading") {
          any_override = true;
          if (!method.body_summary || !method.body_summary->sole_statement_kind)
            continue;
          switch (*method.body_summary->sole_statement_kind) {
            case SoleStatementKind::return_false:
              findings.push_back(make_finding(
                  Smell::SM06, method.location, Confidence::high,
                  "shouldOverrideUrlLoading() applies no restriction: it "
                  "returns false for every URL"));
              break;
            case SoleStatementKind::super_call_only:
              findings.push_back(make_finding(
                  Smell::SM06, method.location, Confidence::high,
                  "shouldOverrideUrlLoading() only delegates to the "
                  "default implementation"));
              break;
            case SoleStatementKind::load_url_then_return:
              findings.push_back(make_finding(
                  Smell::SM06, method.location, Confidence::high,
                  "shouldOverrideUrlLoading() loads every URL right away"));
              break;
            default:
              break;
          }
        } else if (method.name == "shouldInterceptRequest") {
          any_override = true;
          if (method.body_summary &&
              method.body_summary->sole_statement_kind ==
                  SoleStatementKind::return_null) {
            findings.push_back(make_finding(
                Smell::SM06, method.location, Confidence::high,
                "shouldInterceptRequest() returns null for every request"));
          }
        }
      }
    }
  }
  if (!any_override) {
    for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
      if (call.method_name != "setWebViewClient") return;
      findings.push_back(make_finding(
          Smell::SM06, call.location, Confidence::medium,
          "setWebViewClient() installs a client with no URL filtering "
          "overrides"));
    });
  }
  return findings;
}

std::vector<Finding> detect_sm07(const AppModel& app) {
  static const std::set<std::string, std::less<>> kSelfChecks = {
      "checkCallingOrSelfPermission", "enforceCallingOrSelfPermission",
      "checkCallingOrSelfUriPermission", "enforceCallingOrSelfUriPermission"};
  static const std::set<std::string, std::less<>> kContextChecks = {
      "checkPermission", "checkUriPermission", "enforcePermission",
      "enforceUriPermission"};

  std::vector<Finding> findings;
  bool starts_service = any_call_named(app, "startService");

  for (const SourceUnit& unit : app.units) {
    // Types in this unit containing Binder.getCallingPid/Uid calls.
    std::set<std::string> binder_identity_types;
    for (const CallSite& call : unit.call_sites) {
      if (call.receiver_kind != ReceiverKind::binder) continue;
      if (call.method_name == "getCallingPid" ||
          call.method_name == "getCallingUid") {
        binder_identity_types.insert(call.enclosing_type);
      }
    }
    for (const CallSite& call : unit.call_sites) {
      if (starts_service && kSelfChecks.count(call.method_name)) {
        findings.push_back(make_finding(
            Smell::SM07, call.location, Confidence::high,
            call.method_name +
                "() passes whenever the app itself holds the permission, so "
                "a started service never rejects its caller"));
      } else if (kContextChecks.count(call.method_name) &&
                 call.receiver_kind == ReceiverKind::context_like &&
                 binder_identity_types.count(call.enclosing_type)) {
        findings.push_back(make_finding(
            Smell::SM07, call.location, Confidence::high,
            call.method_name +
                "() next to getCallingPid()/getCallingUid() checks the "
                "wrong identity for IPC callers"));
      }
    }
  }
  return findings;
}

std::vector<Finding> detect_sm08(const AppModel& app) {
  bool any_path_permission = false;
  for (const ComponentDecl& component : app.manifest.components) {
    if (!component.path_permissions.empty()) any_path_permission = true;
  }
  std::vector<Finding> findings;
  if (!any_path_permission) return findings;
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (call.method_name != "match") return;
    if (call.receiver_kind != ReceiverKind::uri_matcher) return;
    findings.push_back(make_finding(
        Smell::SM08, call.location, Confidence::high,
        "UriMatcher.match() treats \"//\" like \"/\" while path-permission "
        "enforcement does not, so protected paths can be bypassed"));
  });
  return findings;
}

std::vector<Finding> detect_sm09(const AppModel& app) {
  std::vector<Finding> findings;
  for (const ComponentDecl& component : app.manifest.components) {
    if (component.kind != ComponentKind::provider) continue;
    bool provider_guarded = component.permission.has_value() ||
                            component.read_permission.has_value() ||
                            component.write_permission.has_value();
    for (const PathPermissionDecl& pp : component.path_permissions) {
      findings.push_back(make_finding(
          Smell::SM09,
          {app.manifest.source_path, pp.location.line, pp.location.column},
          provider_guarded ? Confidence::high : Confidence::medium,
          provider_guarded
              ? "path permission on \"" + pp.path_spec +
                    "\" is overridden by the provider-level permission"
              : "path permission on \"" + pp.path_spec +
                    "\" does not take precedence over provider-level "
                    "permissions"));
    }
  }
  return findings;
}

std::vector<Finding> detect_sm10(const AppModel& app) {
  std::vector<Finding> findings;
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (call.method_name != "registerReceiver") return;
    if (call.receiver_kind == ReceiverKind::local_broadcast_manager) return;
    if (call.receiver_kind != ReceiverKind::context_like) return;
    if (call.argument_summaries.size() < 3) {
      findings.push_back(make_finding(
          Smell::SM10, call.location, Confidence::high,
          "registerReceiver() without a broadcaster permission accepts "
          "broadcasts from any app"));
      return;
    }
    if (arg_is_null(call, 2)) {
      findings.push_back(make_finding(
          Smell::SM10, call.location, Confidence::high,
          "registerReceiver() with a null broadcaster permission accepts "
          "broadcasts from any app"));
      return;
    }
    const ArgSummary& permission = call.argument_summaries[2];
    if (!permission.const_value) {
      findings.push_back(make_finding(
          Smell::SM10, call.location, Confidence::low,
          "registerReceiver() permission argument could not be evaluated"));
    }
  });
  return findings;
}

std::vector<Finding> detect_sm11(const AppModel& app,
                                 std::vector<Diagnostic>* diags) {
  static const std::set<std::string, std::less<>> kFactories = {
      "getActivity", "getBroadcast", "getService", "getForegroundService"};
  std::vector<Finding> findings;
  for_each_call(app, [&](const SourceUnit&, const CallSite& call) {
    if (call.receiver_kind != ReceiverKind::pending_intent) return;
    if (call.method_name == "getActivities") {
      if (diags) {
        diags->push_back({call.location, Severity::info, "pending_intent_array",
                          "arrays of pending intents are not analyzed"});
      }
      return;
    }
    if (!kFactories.count(call.method_name)) return;
    switch (intent_class_of(call, 2)) {
      case IntentClass::explicit_target:
        return;
      case IntentClass::implicit:
        findings.push_back(make_finding(
            Smell::SM11, call.location, Confidence::high,
            "PendingIntent." + call.method_name +
                "() wraps an implicit intent that any interceptor can redeem"));
        return;
      case IntentClass::unknown:
        findings.push_back(make_finding(
            Smell::SM11, call.location, Confidence::low,
            "PendingIntent." + call.method_name +
                "() wraps an intent whose target could not be determined"));
        return;
    }
  });
  return findings;
}

std::vector<Finding> detect_sm12(const AppModel& app) {
  std::vector<Finding> findings;
  for (const ComponentDecl& component : app.manifest.components) {
    if (component.kind != ComponentKind::activity) continue;
    std::string affinity = effective_task_affinity(component, app.manifest);
    if (affinity.empty()) continue;
    SourceLocation where{app.manifest.source_path, component.location.line,
                         component.location.column};
    std::string origin = "activity";
    if (!component.task_affinity) {
      if (app.manifest.application_task_affinity &&
          app.manifest.application_location) {
        where.line = app.manifest.application_location->line;
        where.column = app.manifest.application_location->column;
        origin = "application";
      } else {
        origin = "default";
      }
    }
    std::string message =
        origin == "default"
            ? "activity keeps the default task affinity \"" + affinity + "\""
            : (origin == "application"
                   ? "activity inherits non-empty task affinity \"" + affinity +
                         "\" from the application element"
                   : "activity sets non-empty task affinity \"" + affinity +
                         "\"");
    findings.push_back(make_finding(Smell::SM12, std::move(where),
                                    Confidence::medium, std::move(message)));
  }
  return findings;
}

std::vector<Finding> run_all(const AppModel& app, const DetectorConfig& config,
                             std::vector<Diagnostic>* diags) {
  std::vector<Finding> all;
  auto add = [&](Smell smell, auto&& detect) {
    if (!config.enabled.count(smell)) return;
    for (Finding& f : detect()) {
      if (f.confidence < config.min_confidence) continue;
      all.push_back(std::move(f));
    }
  };
  add(Smell::SM01, [&] { return detect_sm01(app, config.sm01_strict); });
  add(Smell::SM02, [&] { return detect_sm02(app); });
  add(Smell::SM03, [&] { return detect_sm03(app); });
  add(Smell::SM04, [&] { return detect_sm04(app); });
  add(Smell::SM05, [&] { return detect_sm05(app); });
  add(Smell::SM06, [&] { return detect_sm06(app); });
  add(Smell::SM07, [&] { return detect_sm07(app); });
  add(Smell::SM08, [&] { return detect_sm08(app); });
  add(Smell::SM09, [&] { return detect_sm09(app); });
  add(Smell::SM10, [&] { return detect_sm10(app); });
  add(Smell::SM11, [&] { return detect_sm11(app, diags); });
  add(Smell::SM12, [&] { return detect_sm12(app); });
  std::sort(all.begin(), all.end(), finding_order);
  return all;
}

}  // namespace iccsmell

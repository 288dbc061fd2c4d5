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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iccsmell/diag.hpp"

namespace iccsmell {

/// String resource table parsed from res/values/strings.xml.
struct StringResources {
  std::map<std::string, std::string> values;
  std::vector<Diagnostic> diagnostics;
};

/// A <permission> declared by the app.
struct PermissionDecl {
  std::string name;
  std::optional<std::string> protection_level;  // raw attribute value
  SourceLocation location;
};

/// A <uses-permission> request.
struct UsesPermission {
  std::string name;
  SourceLocation location;
};

enum class ComponentKind { activity, service, receiver, provider };

std::string_view component_kind_id(ComponentKind k);

struct IntentFilterDecl {
  std::vector<std::string> actions;
  std::vector<std::string> categories;
  std::vector<std::string> schemes;  // non-empty strings only
  SourceLocation location;
};

enum class PathSpecKind { path, path_prefix, path_pattern };

struct PathPermissionDecl {
  PathSpecKind kind = PathSpecKind::path;
  std::string path_spec;
  std::optional<std::string> read_permission;
  std::optional<std::string> write_permission;
  SourceLocation location;
};

struct ComponentDecl {
  ComponentKind kind = ComponentKind::activity;
  std::string name;
  std::optional<bool> exported;
  std::optional<std::string> permission;
  std::optional<std::string> read_permission;   // providers
  std::optional<std::string> write_permission;  // providers
  std::optional<std::string> task_affinity;     // activities only
  std::vector<IntentFilterDecl> intent_filters;
  std::vector<PathPermissionDecl> path_permissions;  // providers only
  SourceLocation location;
};

/// Immutable typed view of one AndroidManifest.xml.
struct ManifestModel {
  std::string package_name;
  std::vector<PermissionDecl> permissions_declared;
  std::vector<UsesPermission> permissions_used;
  std::vector<ComponentDecl> components;
  std::optional<std::string> application_task_affinity;
  std::optional<SourceLocation> application_location;
  std::string source_path;
  std::vector<Diagnostic> diagnostics;
};

/// Parses manifest bytes into a ManifestModel. `@string/...` attribute values
/// are substituted from `resources` when given (chased to a fixed point);
/// unresolved references are kept verbatim and recorded as diagnostics.
/// Throws MalformedXml / MissingManifestRoot.
ManifestModel parse_manifest(std::string_view xml_bytes, const std::string& path,
                             const StringResources* resources = nullptr);

/// Parses a strings.xml document into a key -> value table. Duplicate keys:
/// last occurrence wins, recorded as a diagnostic. Throws MalformedXml.
StringResources parse_string_resources(std::string_view xml_bytes,
                                       const std::string& path);

/// Task affinity that the platform would apply to `component`: the activity's
/// own attribute, else the application-level attribute, else the package
/// name. Never absent; "" only when an explicit empty attribute wins.
std::string effective_task_affinity(const ComponentDecl& component,
                                    const ManifestModel& manifest);

}  // namespace iccsmell

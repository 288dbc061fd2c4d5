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

#include "iccsmell/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

#include "iccsmell/xml.hpp"

namespace iccsmell {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

class ManifestBuilder {
 public:
  ManifestBuilder(const std::string& path, const StringResources* resources)
      : path_(path), resources_(resources) {}

  ManifestModel build(const xml::Element& root) {
    model_.source_path = path_;
    read_package(root);
    for (const auto& child : root.children) {
      if (child.local == "permission") {
        read_permission(child);
      } else if (child.local == "uses-permission" ||
                 child.local == "uses-permission-sdk-23") {
        read_uses_permission(child);
      } else if (child.local == "application") {
        read_application(child);
      }
    }
    return std::move(model_);
  }

 private:
  std::string path_;
  const StringResources* resources_;
  ManifestModel model_;

  void diag(const SourceLocation& at, Severity sev, std::string code,
            std::string message) {
    model_.diagnostics.push_back({at, sev, std::move(code), std::move(message)});
  }

  // Substitutes @string/<key> references, chasing chains with a cycle guard.
  // Already-literal values pass through unchanged.
  std::string resolve(std::string value, const SourceLocation& at) {
    std::set<std::string> seen;
    while (value.rfind("@string/", 0) == 0) {
      std::string key = value.substr(8);
      if (!resources_ || !resources_->values.count(key)) {
        diag(at, Severity::warning, "unresolved_reference",
             "string resource reference " + value + " could not be resolved");
        return value;
      }
      if (!seen.insert(key).second) {
        diag(at, Severity::warning, "unresolved_reference",
             "string resource reference cycle through @string/" + key);
        return value;
      }
      value = resources_->values.at(key);
    }
    if (!value.empty() && value[0] == '@' && value.rfind("@android:", 0) != 0) {
      diag(at, Severity::info, "unresolved_reference",
           "resource reference " + value + " left verbatim");
    }
    return value;
  }

  std::optional<std::string> attr(const xml::Element& elem,
                                  std::string_view name) {
    const xml::Attribute* a = elem.find_android(name);
    if (!a) return std::nullopt;
    return resolve(a->value, a->location);
  }

  std::optional<bool> bool_attr(const xml::Element& elem, std::string_view name) {
    const xml::Attribute* a = elem.find_android(name);
    if (!a) return std::nullopt;
    std::string v = ascii_lower(resolve(a->value, a->location));
    if (v == "true") return true;
    if (v == "false") return false;
    diag(a->location, Severity::warning, "invalid_boolean",
         "attribute " + std::string(name) + " has non-boolean value \"" +
             a->value + "\"");
    return std::nullopt;
  }

  void read_package(const xml::Element& root) {
    for (const auto& a : root.attributes) {
      if (a.prefix.empty() && a.local == "package" && !a.value.empty()) {
        model_.package_name = a.value;
        return;
      }
    }
    // Invalid manifests still get a stable non-empty identifier.
    std::filesystem::path p(path_);
    std::string fallback = p.parent_path().filename().string();
    model_.package_name = fallback.empty() ? "unnamed.app" : fallback;
    diag(root.location, Severity::warning, "missing_package",
         "manifest has no package attribute; using \"" + model_.package_name +
             "\"");
  }

  void read_permission(const xml::Element& elem) {
    PermissionDecl decl;
    decl.location = elem.location;
    if (auto name = attr(elem, "name"); name && !name->empty()) {
      decl.name = *name;
    } else {
      diag(elem.location, Severity::warning, "missing_name",
           "<permission> without android:name ignored");
      return;
    }
    decl.protection_level = attr(elem, "protectionLevel");
    model_.permissions_declared.push_back(std::move(decl));
  }

  void read_uses_permission(const xml::Element& elem) {
    if (auto name = attr(elem, "name"); name && !name->empty()) {
      model_.permissions_used.push_back({*name, elem.location});
    } else {
      diag(elem.location, Severity::warning, "missing_name",
           "<uses-permission> without android:name ignored");
    }
  }

  void read_application(const xml::Element& app) {
    model_.application_location = app.location;
    model_.application_task_affinity = attr(app, "taskAffinity");
    for (const auto& child : app.children) {
      std::optional<ComponentKind> kind;
      if (child.local == "activity") kind = ComponentKind::activity;
      else if (child.local == "service") kind = ComponentKind::service;
      else if (child.local == "receiver") kind = ComponentKind::receiver;
      else if (child.local == "provider") kind = ComponentKind::provider;
      if (kind) read_component(child, *kind);
    }
  }

  void read_component(const xml::Element& elem, ComponentKind kind) {
    ComponentDecl decl;
    decl.kind = kind;
    decl.location = elem.location;
    decl.name = attr(elem, "name").value_or("");
    decl.exported = bool_attr(elem, "exported");
    decl.permission = attr(elem, "permission");
    if (kind == ComponentKind::provider) {
      decl.read_permission = attr(elem, "readPermission");
      decl.write_permission = attr(elem, "writePermission");
    }
    if (kind == ComponentKind::activity) {
      decl.task_affinity = attr(elem, "taskAffinity");
    }
    for (const auto& child : elem.children) {
      if (child.local == "intent-filter") {
        decl.intent_filters.push_back(read_intent_filter(child));
      } else if (child.local == "path-permission") {
        if (kind == ComponentKind::provider) {
          if (auto pp = read_path_permission(child)) {
            decl.path_permissions.push_back(std::move(*pp));
          }
        } else {
          diag(child.location, Severity::warning, "misplaced_element",
               "<path-permission> outside a <provider> ignored");
        }
      }
    }
    model_.components.push_back(std::move(decl));
  }

  IntentFilterDecl read_intent_filter(const xml::Element& elem) {
    IntentFilterDecl filter;
    filter.location = elem.location;
    for (const auto& child : elem.children) {
      if (child.local == "action") {
        if (auto name = attr(child, "name")) filter.actions.push_back(*name);
      } else if (child.local == "category") {
        if (auto name = attr(child, "name")) filter.categories.push_back(*name);
      } else if (child.local == "data") {
        if (const xml::Attribute* a = child.find_android("scheme")) {
          std::string scheme = resolve(a->value, a->location);
          if (scheme.empty()) {
            diag(a->location, Severity::warning, "empty_scheme",
                 "empty android:scheme value ignored");
          } else {
            filter.schemes.push_back(std::move(scheme));
          }
        }
      }
    }
    return filter;
  }

  std::optional<PathPermissionDecl> read_path_permission(const xml::Element& elem) {
    PathPermissionDecl decl;
    decl.location = elem.location;
    const xml::Attribute* path = elem.find_android("path");
    const xml::Attribute* prefix = elem.find_android("pathPrefix");
    const xml::Attribute* pattern = elem.find_android("pathPattern");
    int present = (path != nullptr) + (prefix != nullptr) + (pattern != nullptr);
    if (present == 0) {
      diag(elem.location, Severity::warning, "missing_path_spec",
           "<path-permission> without a path specification ignored");
      return std::nullopt;
    }
    if (present > 1) {
      diag(elem.location, Severity::warning, "ambiguous_path_spec",
           "<path-permission> declares multiple path specifications; "
           "keeping the most specific one");
    }
    if (path) {
      decl.kind = PathSpecKind::path;
      decl.path_spec = resolve(path->value, path->location);
    } else if (prefix) {
      decl.kind = PathSpecKind::path_prefix;
      decl.path_spec = resolve(prefix->value, prefix->location);
    } else {
      decl.kind = PathSpecKind::path_pattern;
      decl.path_spec = resolve(pattern->value, pattern->location);
    }
    decl.read_permission = attr(elem, "readPermission");
    decl.write_permission = attr(elem, "writePermission");
    // android:permission is shorthand for both directions.
    if (auto both = attr(elem, "permission")) {
      if (!decl.read_permission) decl.read_permission = both;
      if (!decl.write_permission) decl.write_permission = both;
    }
    return decl;
  }
};

}  // namespace

std::string_view component_kind_id(ComponentKind k) {
  switch (k) {
    case ComponentKind::activity: return "activity";
    case ComponentKind::service: return "service";
    case ComponentKind::receiver: return "receiver";
    case ComponentKind::provider: return "provider";
  }
  return "activity";
}

ManifestModel parse_manifest(std::string_view xml_bytes, const std::string& path,
                             const StringResources* resources) {
  xml::Document doc = xml::parse(xml_bytes, path);
  if (doc.root.local != "manifest") throw MissingManifestRoot(path);
  return ManifestBuilder(path, resources).build(doc.root);
}

StringResources parse_string_resources(std::string_view xml_bytes,
                                       const std::string& path) {
  xml::Document doc = xml::parse(xml_bytes, path);
  StringResources table;
  if (doc.root.local != "resources") {
    table.diagnostics.push_back({doc.root.location, Severity::warning,
                                 "unexpected_root",
                                 "expected <resources> root; no strings loaded"});
    return table;
  }
  for (const auto& child : doc.root.children) {
    if (child.local != "string") continue;
    const xml::Attribute* name = nullptr;
    for (const auto& a : child.attributes) {
      if (a.local == "name") {
        name = &a;
        break;
      }
    }
    if (!name || name->value.empty()) {
      table.diagnostics.push_back({child.location, Severity::warning,
                                   "missing_name",
                                   "<string> without name attribute ignored"});
      continue;
    }
    if (table.values.count(name->value)) {
      table.diagnostics.push_back({child.location, Severity::warning,
                                   "duplicate_string_key",
                                   "duplicate string resource \"" + name->value +
                                       "\"; last occurrence wins"});
    }
    table.values[name->value] = child.text;
  }
  return table;
}

std::string effective_task_affinity(const ComponentDecl& component,
                                    const ManifestModel& manifest) {
  if (component.task_affinity) return *component.task_affinity;
  if (manifest.application_task_affinity)
    return *manifest.application_task_affinity;
  return manifest.package_name;
}

}  // namespace iccsmell

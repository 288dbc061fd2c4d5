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

#include <doctest.h>

#include <sstream>

#include "iccsmell/manifest.hpp"

using namespace iccsmell;

namespace {

constexpr const char* kNs =
    "xmlns:android=\"http://schemas.android.com/apk/res/android\"";

std::string wrap(const std::string& body) {
  return "<?xml version=\"1.0\"?>\n<manifest " + std::string(kNs) +
         " package=\"com.a.b\">\n" + body + "\n</manifest>\n";
}

}  // namespace

TEST_CASE("minimal manifest: one activity, no attributes") {
  ManifestModel m = parse_manifest(
      wrap("<application><activity android:name=\".M\"/></application>"),
      "AndroidManifest.xml");
  CHECK(m.package_name == "com.a.b");
  REQUIRE(m.components.size() == 1);
  CHECK(m.components[0].kind == ComponentKind::activity);
  CHECK(!m.components[0].task_affinity.has_value());
  CHECK(!m.components[0].exported.has_value());
  CHECK(!m.application_task_affinity.has_value());
}

TEST_CASE("permission without protectionLevel maps to absent") {
  ManifestModel m = parse_manifest(
      wrap("<permission android:name=\"p.X\"/>"), "AndroidManifest.xml");
  REQUIRE(m.permissions_declared.size() == 1);
  CHECK(m.permissions_declared[0].name == "p.X");
  CHECK(!m.permissions_declared[0].protection_level.has_value());
}

TEST_CASE("data scheme lands in the intent filter") {
  ManifestModel m = parse_manifest(
      wrap("<application><activity android:name=\".M\"><intent-filter>"
           "<data android:scheme=\"myapp\"/>"
           "</intent-filter></activity></application>"),
      "AndroidManifest.xml");
  REQUIRE(m.components.size() == 1);
  REQUIRE(m.components[0].intent_filters.size() == 1);
  CHECK(m.components[0].intent_filters[0].schemes ==
        std::vector<std::string>{"myapp"});
}

TEST_CASE("all component kinds are recognized") {
  ManifestModel m = parse_manifest(
      wrap("<application>"
           "<activity android:name=\".A\"/>"
           "<service android:name=\".S\"/>"
           "<receiver android:name=\".R\"/>"
           "<provider android:name=\".P\"/>"
           "</application>"),
      "AndroidManifest.xml");
  REQUIRE(m.components.size() == 4);
  CHECK(m.components[0].kind == ComponentKind::activity);
  CHECK(m.components[1].kind == ComponentKind::service);
  CHECK(m.components[2].kind == ComponentKind::receiver);
  CHECK(m.components[3].kind == ComponentKind::provider);
}

TEST_CASE("path permissions: one spec kind each, only on providers") {
  ManifestModel m = parse_manifest(
      wrap("<application>"
           "<provider android:name=\".P\">"
           "<path-permission android:pathPrefix=\"/a\" "
           "android:readPermission=\"p.R\"/>"
           "<path-permission android:pathPattern=\"/b.*\" "
           "android:permission=\"p.B\"/>"
           "<path-permission android:writePermission=\"p.W\"/>"
           "</provider>"
           "<activity android:name=\".A\">"
           "<path-permission android:path=\"/x\"/>"
           "</activity>"
           "</application>"),
      "AndroidManifest.xml");
  REQUIRE(m.components.size() == 2);
  const ComponentDecl& provider = m.components[0];
  REQUIRE(provider.path_permissions.size() == 2);  // third has no path spec
  CHECK(provider.path_permissions[0].kind == PathSpecKind::path_prefix);
  CHECK(provider.path_permissions[0].read_permission == "p.R");
  CHECK(!provider.path_permissions[0].write_permission.has_value());
  CHECK(provider.path_permissions[1].kind == PathSpecKind::path_pattern);
  CHECK(provider.path_permissions[1].read_permission == "p.B");
  CHECK(provider.path_permissions[1].write_permission == "p.B");
  CHECK(m.components[1].path_permissions.empty());
  bool missing_spec_diag = false, misplaced_diag = false;
  for (const Diagnostic& d : m.diagnostics) {
    if (d.code == "missing_path_spec") missing_spec_diag = true;
    if (d.code == "misplaced_element") misplaced_diag = true;
  }
  CHECK(missing_spec_diag);
  CHECK(misplaced_diag);
}

TEST_CASE("booleans parse case-insensitively, junk becomes absent") {
  ManifestModel m = parse_manifest(
      wrap("<application>"
           "<activity android:name=\".A\" android:exported=\"TRUE\"/>"
           "<activity android:name=\".B\" android:exported=\"false\"/>"
           "<activity android:name=\".C\" android:exported=\"maybe\"/>"
           "</application>"),
      "AndroidManifest.xml");
  CHECK(m.components[0].exported == true);
  CHECK(m.components[1].exported == false);
  CHECK(!m.components[2].exported.has_value());
  bool diag = false;
  for (const Diagnostic& d : m.diagnostics)
    if (d.code == "invalid_boolean") diag = true;
  CHECK(diag);
}

TEST_CASE("root element must be manifest") {
  CHECK_THROWS_AS(parse_manifest("<resources/>", "AndroidManifest.xml"),
                  MissingManifestRoot);
  CHECK_THROWS_AS(parse_manifest("<manifest", "AndroidManifest.xml"),
                  MalformedXml);
}

TEST_CASE("string resources resolve in manifest attributes") {
  StringResources res = parse_string_resources(
      "<resources><string name=\"scheme\">myapp</string></resources>",
      "strings.xml");
  ManifestModel m = parse_manifest(
      wrap("<application><activity android:name=\".M\"><intent-filter>"
           "<data android:scheme=\"@string/scheme\"/>"
           "</intent-filter></activity></application>"),
      "AndroidManifest.xml", &res);
  CHECK(m.components[0].intent_filters[0].schemes ==
        std::vector<std::string>{"myapp"});
}

TEST_CASE("unresolved references stay verbatim with a diagnostic") {
  ManifestModel m = parse_manifest(
      wrap("<application><activity android:name=\".M\"><intent-filter>"
           "<data android:scheme=\"@string/missing\"/>"
           "</intent-filter></activity></application>"),
      "AndroidManifest.xml");
  CHECK(m.components[0].intent_filters[0].schemes ==
        std::vector<std::string>{"@string/missing"});
  bool diag = false;
  for (const Diagnostic& d : m.diagnostics)
    if (d.code == "unresolved_reference") diag = true;
  CHECK(diag);
}

TEST_CASE("string resource table: basics and duplicates") {
  StringResources empty = parse_string_resources("<resources/>", "strings.xml");
  CHECK(empty.values.empty());
  CHECK(empty.diagnostics.empty());

  StringResources res = parse_string_resources(
      "<resources>"
      "<string name=\"k\">first</string>"
      "<color name=\"ignored\">#fff</color>"
      "<string name=\"k\">second</string>"
      "</resources>",
      "strings.xml");
  CHECK(res.values.at("k") == "second");  // last occurrence wins
  REQUIRE(res.diagnostics.size() == 1);
  CHECK(res.diagnostics[0].code == "duplicate_string_key");
}

TEST_CASE("effective task affinity precedence") {
  ManifestModel m = parse_manifest(
      wrap("<application android:taskAffinity=\"x\">"
           "<activity android:name=\".Explicit\" android:taskAffinity=\"\"/>"
           "<activity android:name=\".Inherits\"/>"
           "</application>"),
      "AndroidManifest.xml");
  CHECK(effective_task_affinity(m.components[0], m) == "");  // explicit wins
  CHECK(effective_task_affinity(m.components[1], m) == "x"); // app level

  ManifestModel plain = parse_manifest(
      wrap("<application><activity android:name=\".D\"/></application>"),
      "AndroidManifest.xml");
  CHECK(effective_task_affinity(plain.components[0], plain) == "com.a.b");
}

TEST_CASE("parsing is deterministic") {
  std::string bytes = wrap(
      "<permission android:name=\"p.X\"/>"
      "<application><activity android:name=\".M\"/></application>");
  ManifestModel a = parse_manifest(bytes, "AndroidManifest.xml");
  ManifestModel b = parse_manifest(bytes, "AndroidManifest.xml");
  CHECK(a.package_name == b.package_name);
  REQUIRE(a.components.size() == b.components.size());
  CHECK(a.components[0].location == b.components[0].location);
  CHECK(a.permissions_declared[0].location == b.permissions_declared[0].location);
}

TEST_CASE("declared locations point inside the document") {
  std::string bytes = wrap(
      "<permission android:name=\"p.X\"/>"
      "<uses-permission android:name=\"u.Y\"/>"
      "<application><activity android:name=\".M\"><intent-filter>"
      "<data android:scheme=\"s\"/>"
      "</intent-filter></activity></application>");
  int line_count = 1;
  for (char c : bytes)
    if (c == '\n') ++line_count;
  ManifestModel m = parse_manifest(bytes, "AndroidManifest.xml");
  auto in_doc = [&](const SourceLocation& loc) {
    return loc.line >= 1 && loc.line <= line_count && loc.column >= 1;
  };
  CHECK(in_doc(m.permissions_declared.at(0).location));
  CHECK(in_doc(m.permissions_used.at(0).location));
  CHECK(in_doc(m.components.at(0).location));
  CHECK(in_doc(m.components.at(0).intent_filters.at(0).location));
}

TEST_CASE("resource resolution is idempotent") {
  StringResources res = parse_string_resources(
      "<resources><string name=\"a\">literal</string>"
      "<string name=\"chain\">@string/a</string></resources>",
      "strings.xml");
  // A literal value passes through untouched; a chained reference lands on
  // the same literal, so resolving the result again changes nothing.
  ManifestModel m1 = parse_manifest(
      wrap("<application><activity android:name=\".M\"><intent-filter>"
           "<data android:scheme=\"@string/chain\"/>"
           "</intent-filter></activity></application>"),
      "AndroidManifest.xml", &res);
  CHECK(m1.components[0].intent_filters[0].schemes ==
        std::vector<std::string>{"literal"});
  ManifestModel m2 = parse_manifest(
      wrap("<application><activity android:name=\".M\"><intent-filter>"
           "<data android:scheme=\"literal\"/>"
           "</intent-filter></activity></application>"),
      "AndroidManifest.xml", &res);
  CHECK(m2.components[0].intent_filters[0].schemes ==
        std::vector<std::string>{"literal"});
}

TEST_CASE("missing package falls back to the directory name") {
  ManifestModel m = parse_manifest(
      "<manifest " + std::string(kNs) + "><application/></manifest>",
      "someapp/AndroidManifest.xml");
  CHECK(m.package_name == "someapp");
  bool diag = false;
  for (const Diagnostic& d : m.diagnostics)
    if (d.code == "missing_package") diag = true;
  CHECK(diag);
}

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

#include "helpers.hpp"

using namespace iccsmell;
using namespace iccsmell::testing;

TEST_CASE("discovers the manifest and all sources") {
  TempDir dir("discover");
  AppModel app = model_from_files(
      dir, {
               {"AndroidManifest.xml", kPlainManifest},
               {"src/Main.java", "class Main {}\n"},
               {"app/java/com/x/Other.java", "class Other {}\n"},
           });
  CHECK(app.manifest.package_name == "test.app");
  REQUIRE(app.units.size() == 2);
  CHECK(app.units[0].path == "app/java/com/x/Other.java");
  CHECK(app.units[1].path == "src/Main.java");
}

TEST_CASE("missing manifest raises NoManifestFound") {
  TempDir dir("nomanifest");
  write_file(dir.path() / "src/Main.java", "class Main {}\n");
  CHECK_THROWS_AS(build_app_model(dir.path()), NoManifestFound);
}

TEST_CASE("files under build and test segments are ignored") {
  TempDir dir("buildskip");
  AppModel app = model_from_files(
      dir, {
               {"AndroidManifest.xml", kPlainManifest},
               {"build/AndroidManifest.xml", "<broken"},
               {"src/Main.java", "class Main {}\n"},
               {"build/src/Gen.java", "class Gen {}\n"},
               {"test/java/MainTest.java", "class MainTest {}\n"},
           });
  CHECK(app.units.size() == 1);
  CHECK(app.units[0].path == "src/Main.java");
}

TEST_CASE("shortest manifest path wins, extras become diagnostics") {
  TempDir dir("twomanifests");
  std::string nested = kPlainManifest;
  AppModel app = model_from_files(
      dir, {
               {"AndroidManifest.xml", kPlainManifest},
               {"library/AndroidManifest.xml", nested},
           });
  CHECK(app.manifest.source_path == "AndroidManifest.xml");
  bool extra = false;
  for (const Diagnostic& d : app.diagnostics)
    if (d.code == "extra_manifest") extra = true;
  CHECK(extra);
}

TEST_CASE("unreadable source becomes a diagnostic, others still parse") {
  TempDir dir("unreadable");
  write_file(dir.path() / "AndroidManifest.xml", kPlainManifest);
  write_file(dir.path() / "src/Good.java", "class Good {}\n");
  // A directory with a .java name: matched as a source candidate but not a
  // regular file.
  fs::create_directories(dir.path() / "src/Trap.java");
  AppModel app = build_app_model(dir.path());
  REQUIRE(app.units.size() == 1);
  CHECK(app.units[0].path == "src/Good.java");
  bool unreadable = false;
  for (const Diagnostic& d : app.diagnostics)
    if (d.code == "unreadable_file" && d.location.file == "src/Trap.java")
      unreadable = true;
  CHECK(unreadable);
}

TEST_CASE("kotlin sources are skipped with a diagnostic") {
  TempDir dir("kotlin");
  AppModel app = model_from_files(
      dir, {
               {"AndroidManifest.xml", kPlainManifest},
               {"src/Main.java", "class Main {}\n"},
               {"src/Extra.kt", "class Extra\n"},
           });
  CHECK(app.units.size() == 1);
  bool skipped = false;
  for (const Diagnostic& d : app.diagnostics)
    if (d.code == "kotlin_skipped" && d.location.file == "src/Extra.kt")
      skipped = true;
  CHECK(skipped);
}

TEST_CASE("string resources feed manifest resolution") {
  TempDir dir("resources");
  std::string manifest =
      "<?xml version=\"1.0\"?>\n"
      "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
      "    package=\"res.app\">\n"
      "  <application android:taskAffinity=\"\">\n"
      "    <activity android:name=\".M\">\n"
      "      <intent-filter>\n"
      "        <data android:scheme=\"@string/scheme\"/>\n"
      "      </intent-filter>\n"
      "    </activity>\n"
      "  </application>\n"
      "</manifest>\n";
  AppModel app = model_from_files(
      dir, {
               {"AndroidManifest.xml", manifest},
               {"res/values/strings.xml",
                "<resources><string name=\"scheme\">deep</string></resources>"},
           });
  CHECK(app.manifest.components[0].intent_filters[0].schemes ==
        std::vector<std::string>{"deep"});
}

TEST_CASE("malformed strings.xml degrades to a diagnostic") {
  TempDir dir("badstrings");
  AppModel app = model_from_files(
      dir, {
               {"AndroidManifest.xml", kPlainManifest},
               {"res/values/strings.xml", "<resources><string"},
           });
  CHECK(app.manifest.package_name == "test.app");
  bool noted = false;
  for (const Diagnostic& d : app.diagnostics)
    if (d.code == "malformed_strings_xml") noted = true;
  CHECK(noted);
}

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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "iccsmell/app_model.hpp"
#include "iccsmell/detectors.hpp"

namespace iccsmell::testing {

namespace fs = std::filesystem;

/// Temp directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("iccsmell-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
};

inline void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

/// Materializes an in-memory project layout and builds its AppModel.
inline AppModel model_from_files(
    const TempDir& dir, const std::map<std::string, std::string>& files) {
  for (const auto& [rel, content] : files) {
    write_file(dir.path() / rel, content);
  }
  return build_app_model(dir.path());
}

constexpr const char* kPlainManifest =
    "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
    "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
    "    package=\"test.app\">\n"
    "  <application android:taskAffinity=\"\">\n"
    "    <activity android:name=\".Main\"/>\n"
    "  </application>\n"
    "</manifest>\n";

}  // namespace iccsmell::testing

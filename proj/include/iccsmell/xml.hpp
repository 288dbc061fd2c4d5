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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iccsmell/diag.hpp"

namespace iccsmell::xml {

inline constexpr std::string_view kAndroidNs =
    "http://schemas.android.com/apk/res/android";

struct Attribute {
  std::string prefix;   // "" when unprefixed
  std::string local;    // local name
  std::string ns_uri;   // resolved namespace URI, "" when none/unbound
  std::string value;    // entity-decoded value
  SourceLocation location;  // position of the attribute name
};

struct Element {
  std::string prefix;
  std::string local;
  std::string ns_uri;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;         // concatenated direct character data
  SourceLocation location;  // position of the opening '<'

  /// Attribute value by namespace URI + local name; nullptr when absent.
  const Attribute* find(std::string_view ns, std::string_view name) const;

  /// Android-namespace attribute lookup. Tolerates an unbound "android:"
  /// prefix, which shows up in hand-written manifest snippets.
  const Attribute* find_android(std::string_view name) const;

  /// First child element with the given local name, or nullptr.
  const Element* child(std::string_view name) const;
};

struct Document {
  Element root;
};

/// Parses a UTF-8 XML document (BOM tolerated). Comments, processing
/// instructions and DOCTYPE are skipped; namespaces are resolved during the
/// parse. Throws MalformedXml on well-formedness violations.
Document parse(std::string_view bytes, const std::string& path);

}  // namespace iccsmell::xml

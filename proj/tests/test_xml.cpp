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

#include "iccsmell/xml.hpp"

using namespace iccsmell;

TEST_CASE("parses elements, attributes and positions") {
  auto doc = xml::parse(
      "<root a=\"1\">\n"
      "  <child b=\"two\"/>\n"
      "  <child/>\n"
      "</root>",
      "t.xml");
  CHECK(doc.root.local == "root");
  CHECK(doc.root.location.line == 1);
  CHECK(doc.root.location.column == 1);
  REQUIRE(doc.root.children.size() == 2);
  CHECK(doc.root.children[0].location.line == 2);
  CHECK(doc.root.children[0].location.column == 3);
  CHECK(doc.root.children[0].attributes.at(0).value == "two");
}

TEST_CASE("resolves the android namespace under any prefix") {
  auto doc = xml::parse(
      "<m xmlns:a=\"http://schemas.android.com/apk/res/android\">"
      "<x a:scheme=\"myapp\"/></m>",
      "t.xml");
  const xml::Attribute* attr = doc.root.children[0].find_android("scheme");
  REQUIRE(attr != nullptr);
  CHECK(attr->value == "myapp");
  CHECK(attr->ns_uri == xml::kAndroidNs);
}

TEST_CASE("tolerates an unbound android prefix") {
  auto doc = xml::parse("<m><x android:scheme=\"s\"/></m>", "t.xml");
  const xml::Attribute* attr = doc.root.children[0].find_android("scheme");
  REQUIRE(attr != nullptr);
  CHECK(attr->value == "s");
  CHECK(attr->ns_uri.empty());
}

TEST_CASE("attributes in unrelated namespaces do not match") {
  auto doc = xml::parse(
      "<m xmlns:t=\"http://example.org/tools\"><x t:scheme=\"s\"/></m>",
      "t.xml");
  CHECK(doc.root.children[0].find_android("scheme") == nullptr);
}

TEST_CASE("decodes entities and CDATA") {
  auto doc = xml::parse(
      "<r a=\"&lt;&amp;&gt;&quot;&#65;&#x42;\">x<![CDATA[<raw>]]>y</r>",
      "t.xml");
  CHECK(doc.root.attributes[0].value == "<&>\"AB");
  CHECK(doc.root.text == "x<raw>y");
}

TEST_CASE("skips BOM, comments, PIs and DOCTYPE") {
  auto doc = xml::parse(
      "\xEF\xBB\xBF<?xml version=\"1.0\"?>\n"
      "<!DOCTYPE r [<!ENTITY x \"y\">]>\n"
      "<!-- hello -->\n"
      "<r><!-- inner --><c/></r>",
      "t.xml");
  CHECK(doc.root.local == "r");
  CHECK(doc.root.children.size() == 1);
}

TEST_CASE("reports malformed documents with positions") {
  CHECK_THROWS_AS(xml::parse("<a><b></a>", "t.xml"), MalformedXml);
  CHECK_THROWS_AS(xml::parse("<a", "t.xml"), MalformedXml);
  CHECK_THROWS_AS(xml::parse("", "t.xml"), MalformedXml);
  CHECK_THROWS_AS(xml::parse("<a/><b/>", "t.xml"), MalformedXml);
  CHECK_THROWS_AS(xml::parse("<a x=1/>", "t.xml"), MalformedXml);
  CHECK_THROWS_AS(xml::parse("<a>&unknown;</a>", "t.xml"), MalformedXml);
  try {
    xml::parse("<a>\n  <b attr=\"v\"</a>", "t.xml");
    FAIL("expected MalformedXml");
  } catch (const MalformedXml& e) {
    CHECK(e.position.file == "t.xml");
    CHECK(e.position.line == 2);
  }
}

TEST_CASE("nested elements with the same name close correctly") {
  auto doc = xml::parse("<a><a><a/></a></a>", "t.xml");
  CHECK(doc.root.children.size() == 1);
  CHECK(doc.root.children[0].children.size() == 1);
}

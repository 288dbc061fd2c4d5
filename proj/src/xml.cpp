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

#include "iccsmell/xml.hpp"

#include <cctype>
#include <charconv>

namespace iccsmell::xml {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

struct NsBinding {
  std::string prefix;
  std::string uri;
};

class Parser {
 public:
  Parser(std::string_view input, std::string path)
      : in_(input), path_(std::move(path)) {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") advance_n(3);
  }

  Document run() {
    Document doc;
    skip_misc();
    if (at_end()) fail("document contains no root element");
    doc.root = parse_element();
    skip_misc();
    if (!at_end()) fail("content after the root element");
    return doc;
  }

 private:
  std::string_view in_;
  std::string path_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<NsBinding> ns_stack_;

  bool at_end() const { return pos_ >= in_.size(); }
  char peek(size_t off = 0) const {
    return pos_ + off < in_.size() ? in_[pos_ + off] : '\0';
  }
  bool starts_with(std::string_view s) const {
    return in_.substr(pos_, s.size()) == s;
  }

  SourceLocation here() const { return {path_, line_, col_}; }

  [[noreturn]] void fail(const std::string& reason) const {
    throw MalformedXml(here(), reason);
  }

  void advance() {
    if (in_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void advance_n(size_t n) {
    for (size_t i = 0; i < n && !at_end(); ++i) advance();
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  // Whitespace, comments, PIs and DOCTYPE between markup.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<?")) {
        skip_pi();
      } else if (starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    SourceLocation start = here();
    advance_n(4);
    while (!starts_with("-->")) {
      if (at_end()) throw MalformedXml(start, "unterminated comment");
      advance();
    }
    advance_n(3);
  }

  void skip_pi() {
    SourceLocation start = here();
    advance_n(2);
    while (!starts_with("?>")) {
      if (at_end()) throw MalformedXml(start, "unterminated processing instruction");
      advance();
    }
    advance_n(2);
  }

  void skip_doctype() {
    SourceLocation start = here();
    int bracket_depth = 0;
    while (!at_end()) {
      char c = peek();
      if (c == '[') ++bracket_depth;
      if (c == ']') --bracket_depth;
      if (c == '>' && bracket_depth <= 0) {
        advance();
        return;
      }
      advance();
    }
    throw MalformedXml(start, "unterminated DOCTYPE");
  }

  std::string parse_name() {
    if (!is_name_start(peek())) fail("expected a name");
    size_t start = pos_;
    while (!at_end() && is_name_char(peek())) advance();
    return std::string(in_.substr(start, pos_ - start));
  }

  std::string decode_entities(std::string_view raw, const SourceLocation& at) {
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size();) {
      if (raw[i] != '&') {
        out.push_back(raw[i++]);
        continue;
      }
      size_t semi = raw.find(';', i + 1);
      if (semi == std::string_view::npos)
        throw MalformedXml(at, "unterminated entity reference");
      std::string_view name = raw.substr(i + 1, semi - i - 1);
      if (name == "lt") {
        out.push_back('<');
      } else if (name == "gt") {
        out.push_back('>');
      } else if (name == "amp") {
        out.push_back('&');
      } else if (name == "apos") {
        out.push_back('\'');
      } else if (name == "quot") {
        out.push_back('"');
      } else if (!name.empty() && name[0] == '#') {
        unsigned long cp = 0;
        bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
        std::string_view digits = name.substr(hex ? 2 : 1);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                       cp, hex ? 16 : 10);
        if (ec != std::errc() || p != digits.data() + digits.size())
          throw MalformedXml(at, "invalid character reference");
        append_utf8(out, cp);
      } else {
        throw MalformedXml(at, "unknown entity &" + std::string(name) + ";");
      }
      i = semi + 1;
    }
    return out;
  }

  static void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  std::string parse_attr_value(const SourceLocation& at) {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
    advance();
    size_t start = pos_;
    while (!at_end() && peek() != quote) {
      if (peek() == '<') fail("'<' inside attribute value");
      advance();
    }
    if (at_end()) throw MalformedXml(at, "unterminated attribute value");
    std::string raw(in_.substr(start, pos_ - start));
    advance();  // closing quote
    return decode_entities(raw, at);
  }

  std::string resolve_prefix(const std::string& prefix) const {
    for (auto it = ns_stack_.rbegin(); it != ns_stack_.rend(); ++it) {
      if (it->prefix == prefix) return it->uri;
    }
    return "";
  }

  static void split_qname(const std::string& qname, std::string& prefix,
                          std::string& local) {
    auto colon = qname.find(':');
    if (colon == std::string::npos) {
      prefix.clear();
      local = qname;
    } else {
      prefix = qname.substr(0, colon);
      local = qname.substr(colon + 1);
    }
  }

  Element parse_element() {
    SourceLocation open_loc = here();
    if (peek() != '<') fail("expected '<'");
    advance();
    std::string qname = parse_name();

    Element elem;
    elem.location = open_loc;
    split_qname(qname, elem.prefix, elem.local);

    size_t ns_mark = ns_stack_.size();
    bool self_closing = false;

    // Attributes; xmlns declarations take effect for the whole element.
    for (;;) {
      skip_ws();
      if (at_end()) throw MalformedXml(open_loc, "unterminated start tag");
      if (peek() == '>') {
        advance();
        break;
      }
      if (starts_with("/>")) {
        advance_n(2);
        self_closing = true;
        break;
      }
      SourceLocation attr_loc = here();
      std::string attr_qname = parse_name();
      skip_ws();
      if (peek() != '=') throw MalformedXml(attr_loc, "expected '=' after attribute name");
      advance();
      skip_ws();
      std::string value = parse_attr_value(attr_loc);

      if (attr_qname == "xmlns") {
        ns_stack_.push_back({"", value});
      } else if (attr_qname.rfind("xmlns:", 0) == 0) {
        ns_stack_.push_back({attr_qname.substr(6), value});
      } else {
        Attribute attr;
        split_qname(attr_qname, attr.prefix, attr.local);
        attr.value = std::move(value);
        attr.location = attr_loc;
        elem.attributes.push_back(std::move(attr));
      }
    }

    elem.ns_uri = resolve_prefix(elem.prefix);
    for (auto& attr : elem.attributes) {
      // Unprefixed attributes carry no namespace.
      if (!attr.prefix.empty()) attr.ns_uri = resolve_prefix(attr.prefix);
    }

    if (!self_closing) parse_content(elem, open_loc, qname);

    ns_stack_.resize(ns_mark);
    return elem;
  }

  void parse_content(Element& elem, const SourceLocation& open_loc,
                     const std::string& qname) {
    for (;;) {
      if (at_end())
        throw MalformedXml(open_loc, "unterminated element <" + qname + ">");
      if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<![CDATA[")) {
        parse_cdata(elem);
      } else if (starts_with("<?")) {
        skip_pi();
      } else if (starts_with("</")) {
        SourceLocation close_loc = here();
        advance_n(2);
        std::string close_name = parse_name();
        if (close_name != qname)
          throw MalformedXml(close_loc, "mismatched close tag </" + close_name +
                                            "> for <" + qname + ">");
        skip_ws();
        if (peek() != '>') throw MalformedXml(close_loc, "expected '>' in close tag");
        advance();
        return;
      } else if (peek() == '<') {
        elem.children.push_back(parse_element());
      } else {
        size_t start = pos_;
        SourceLocation text_loc = here();
        while (!at_end() && peek() != '<') advance();
        elem.text += decode_entities(in_.substr(start, pos_ - start), text_loc);
      }
    }
  }

  void parse_cdata(Element& elem) {
    SourceLocation start = here();
    advance_n(9);
    size_t data_start = pos_;
    while (!starts_with("]]>")) {
      if (at_end()) throw MalformedXml(start, "unterminated CDATA section");
      advance();
    }
    elem.text += std::string(in_.substr(data_start, pos_ - data_start));
    advance_n(3);
  }
};

}  // namespace

const Attribute* Element::find(std::string_view ns, std::string_view name) const {
  for (const auto& attr : attributes) {
    if (attr.ns_uri == ns && attr.local == name) return &attr;
  }
  return nullptr;
}

const Attribute* Element::find_android(std::string_view name) const {
  for (const auto& attr : attributes) {
    if (attr.local != name) continue;
    if (attr.ns_uri == kAndroidNs) return &attr;
    if (attr.ns_uri.empty() && attr.prefix == "android") return &attr;
  }
  return nullptr;
}

const Element* Element::child(std::string_view name) const {
  for (const auto& c : children) {
    if (c.local == name) return &c;
  }
  return nullptr;
}

Document parse(std::string_view bytes, const std::string& path) {
  return Parser(bytes, path).run();
}

}  // namespace iccsmell::xml

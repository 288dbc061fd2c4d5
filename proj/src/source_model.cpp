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

#include "iccsmell/source_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>

namespace iccsmell {

namespace {

// ---------------------------------------------------------------------------
// Lexing

enum class Tok { ident, string_lit, char_lit, number, punct, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  int line = 1;
  int col = 1;

  bool is(std::string_view t) const { return text == t; }
  bool is_punct(std::string_view t) const { return kind == Tok::punct && text == t; }
  bool is_ident() const { return kind == Tok::ident; }
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_ident_char(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& path,
        std::vector<Diagnostic>& diags)
      : in_(text), path_(path), diags_(diags) {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    int stray_bytes = 0;
    SourceLocation first_stray;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= in_.size()) break;
      char c = in_[pos_];
      int line = line_, col = col_;
      if (is_ident_start(c)) {
        out.push_back({Tok::ident, lex_ident(), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back({Tok::number, lex_number(), line, col});
      } else if (c == '"') {
        out.push_back({Tok::string_lit, lex_string(), line, col});
      } else if (c == '\'') {
        out.push_back({Tok::char_lit, lex_char(), line, col});
      } else if (std::ispunct(static_cast<unsigned char>(c))) {
        out.push_back({Tok::punct, lex_punct(), line, col});
      } else {
        if (stray_bytes++ == 0) first_stray = {path_, line, col};
        advance();
      }
    }
    if (stray_bytes > 0) {
      diags_.push_back({first_stray, Severity::warning, "stray_bytes",
                        std::to_string(stray_bytes) +
                            " byte(s) outside the source character set skipped"});
    }
    out.push_back({Tok::eof, "", line_, col_});
    return out;
  }

 private:
  std::string_view in_;
  std::string path_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  char peek(size_t off = 0) const {
    return pos_ + off < in_.size() ? in_[pos_ + off] : '\0';
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

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < in_.size() &&
             std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      }
      if (peek() == '/' && peek(1) == '/') {
        while (pos_ < in_.size() && peek() != '\n') advance();
      } else if (peek() == '/' && peek(1) == '*') {
        SourceLocation start{path_, line_, col_};
        advance();
        advance();
        while (pos_ < in_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= in_.size()) {
          diags_.push_back({start, Severity::warning, "unterminated_comment",
                            "block comment is not terminated"});
          return;
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string lex_ident() {
    size_t start = pos_;
    while (pos_ < in_.size() && is_ident_char(peek())) advance();
    return std::string(in_.substr(start, pos_ - start));
  }

  std::string lex_number() {
    size_t start = pos_;
    advance();
    while (pos_ < in_.size()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        advance();
      } else if (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        advance();
      } else if ((c == '+' || c == '-') && pos_ > start &&
                 (in_[pos_ - 1] == 'e' || in_[pos_ - 1] == 'E')) {
        advance();
      } else {
        break;
      }
    }
    return std::string(in_.substr(start, pos_ - start));
  }

  // Returns the decoded value; text blocks ("""...""") are supported enough
  // to keep the token stream aligned.
  std::string lex_string() {
    SourceLocation start{path_, line_, col_};
    if (peek(1) == '"' && peek(2) == '"') {
      advance();
      advance();
      advance();
      size_t begin = pos_;
      while (pos_ < in_.size() &&
             !(peek() == '"' && peek(1) == '"' && peek(2) == '"')) {
        advance();
      }
      std::string value(in_.substr(begin, pos_ - begin));
      if (pos_ >= in_.size()) {
        diags_.push_back({start, Severity::warning, "unterminated_string",
                          "text block is not terminated"});
      } else {
        advance();
        advance();
        advance();
      }
      return value;
    }
    advance();  // opening quote
    std::string value;
    while (pos_ < in_.size() && peek() != '"' && peek() != '\n') {
      if (peek() == '\\' && pos_ + 1 < in_.size()) {
        advance();
        char e = peek();
        switch (e) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case 'r': value.push_back('\r'); break;
          case 'b': value.push_back('\b'); break;
          case 'f': value.push_back('\f'); break;
          case '0': value.push_back('\0'); break;
          default: value.push_back(e); break;
        }
        advance();
      } else {
        value.push_back(peek());
        advance();
      }
    }
    if (pos_ >= in_.size() || peek() == '\n') {
      diags_.push_back({start, Severity::warning, "unterminated_string",
                        "string literal is not terminated"});
    } else {
      advance();
    }
    return value;
  }

  std::string lex_char() {
    SourceLocation start{path_, line_, col_};
    advance();
    std::string value;
    while (pos_ < in_.size() && peek() != '\'' && peek() != '\n') {
      if (peek() == '\\' && pos_ + 1 < in_.size()) advance();
      value.push_back(peek());
      advance();
    }
    if (pos_ >= in_.size() || peek() == '\n') {
      diags_.push_back({start, Severity::warning, "unterminated_char",
                        "character literal is not terminated"});
    } else {
      advance();
    }
    return value;
  }

  std::string lex_punct() {
    // Multi-character operators are merged only where splitting would corrupt
    // the analysis ('==' vs assignment, compound assignments, '->', '::').
    static const char* kTwo[] = {"==", "!=", "<=", ">=", "&&", "||", "++",
                                 "--", "+=", "-=", "*=", "/=", "%=", "&=",
                                 "|=", "^=", "->", "::"};
    char a = peek(), b = peek(1);
    for (const char* op : kTwo) {
      if (op[0] == a && op[1] == b) {
        advance();
        advance();
        return op;
      }
    }
    advance();
    return std::string(1, a);
  }
};

// ---------------------------------------------------------------------------
// Structural model gathered by the parser

struct LocalVar {
  std::string type;  // unqualified declared type, "" when unknown
  int decl_tok = -1;
  bool has_init = false;
  std::pair<int, int> init{-1, -1};
  std::vector<std::pair<int, std::pair<int, int>>> assigns;  // tok, rhs range
};

struct FieldInfo {
  std::string type;
  bool is_final = false;
  bool has_init = false;
  std::pair<int, int> init{-1, -1};
  int extra_assigns = 0;
};

struct MethodCtx {
  int owner = -1;  // index into types
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // name, type
  std::map<std::string, LocalVar> locals;
  std::vector<std::pair<int, int>> top_stmts;  // only for real method bodies
  std::vector<std::pair<int, int>> holes;      // anonymous class body spans
  int method_index = -1;  // index into owner's methods, -1 for initializers
};

struct RawCall {
  int name_tok = -1;
  std::vector<std::pair<int, int>> args;
  enum class Recv { bare, dotted, chain, unknown } recv = Recv::bare;
  std::string recv_dotted;      // for Recv::dotted, full dotted receiver
  std::string chain_root;       // for Recv::chain, "" when the chain is bare
  std::string chain_method;
  bool chain_root_is_new = false;
  int ctx = -1;
};

struct SimpleAssign {
  int ctx = -1;
  std::string name;
  std::string qualifier;  // "", "this", or a type/variable name
  int tok = -1;
  std::pair<int, int> rhs{-1, -1};
};

struct ParsedType {
  TypeDecl decl;
  std::map<std::string, FieldInfo> fields;
  int anon_counter = 0;
};

const std::set<std::string>& modifier_words() {
  static const std::set<std::string> kMods = {
      "public", "private",   "protected", "static",   "final",
      "abstract", "native",  "synchronized", "transient", "volatile",
      "strictfp", "default", "sealed"};
  return kMods;
}

bool is_screaming_case(std::string_view s) {
  if (s.size() < 2) return false;
  bool has_alpha = false;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    if (std::isupper(static_cast<unsigned char>(c))) has_alpha = true;
  }
  return has_alpha;
}

std::string last_segment(const std::string& dotted) {
  auto pos = dotted.rfind('.');
  return pos == std::string::npos ? dotted : dotted.substr(pos + 1);
}

// Token text quoted into diagnostic messages; arbitrary input bytes must not
// leak through unescaped.
std::string snippet(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (out.size() >= 24) {
      out += "...";
      break;
    }
    unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7F) {
      out.push_back(c);
    } else {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02X", u);
      out += buf;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

constexpr int kMaxDiagnostics = 40;

class UnitParser {
 public:
  UnitParser(std::vector<Token> tokens, std::string path)
      : toks_(std::move(tokens)), path_(std::move(path)) {
    build_bracket_table();
  }

  void run(SourceUnit& unit) {
    parse_compilation_unit();
    resolve(unit);
  }

  std::vector<Diagnostic>& diagnostics() { return diags_; }

 private:
  std::vector<Token> toks_;
  std::string path_;
  std::vector<Diagnostic> diags_;
  int suppressed_diags_ = 0;

  std::vector<ParsedType> types_;
  std::vector<MethodCtx> ctxs_;
  std::vector<RawCall> calls_;
  std::vector<SimpleAssign> assigns_;

  size_t i_ = 0;

  // Hostile inputs can nest arbitrarily deep; recursion is bounded and the
  // remainder is skipped opaquely.
  static constexpr int kMaxNesting = 100;
  int type_depth_ = 0;
  int walk_depth_ = 0;
  int expr_depth_ = 0;

  struct ScopedDepth {
    explicit ScopedDepth(int& counter) : counter_(counter) { ++counter_; }
    ~ScopedDepth() { --counter_; }
    int& counter_;
  };

  // -- token helpers --------------------------------------------------------

  const Token& tok(size_t i) const {
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& cur() const { return tok(i_); }
  bool at_end() const { return cur().kind == Tok::eof; }
  SourceLocation loc(size_t i) const {
    return {path_, tok(i).line, tok(i).col};
  }

  void diag(size_t at, std::string code, std::string message) {
    if (static_cast<int>(diags_.size()) >= kMaxDiagnostics) {
      ++suppressed_diags_;
      return;
    }
    diags_.push_back(
        {loc(at), Severity::warning, std::move(code), std::move(message)});
  }

  // Bracket matching is precomputed in one pass so balanced skips stay O(1)
  // even on unbalanced adversarial input. All three bracket kinds nest
  // uniformly; a closer of any kind matches the innermost open bracket.
  std::vector<size_t> close_of_open_;
  std::vector<size_t> open_of_close_;

  static bool is_opener(const Token& t) {
    return t.kind == Tok::punct &&
           (t.text == "(" || t.text == "[" || t.text == "{");
  }
  static bool is_closer(const Token& t) {
    return t.kind == Tok::punct &&
           (t.text == ")" || t.text == "]" || t.text == "}");
  }

  void build_bracket_table() {
    close_of_open_.assign(toks_.size(), SIZE_MAX);
    open_of_close_.assign(toks_.size(), SIZE_MAX);
    std::vector<size_t> stack;
    for (size_t i = 0; i < toks_.size(); ++i) {
      if (is_opener(toks_[i])) {
        stack.push_back(i);
      } else if (is_closer(toks_[i]) && !stack.empty()) {
        close_of_open_[stack.back()] = i;
        open_of_close_[i] = stack.back();
        stack.pop_back();
      }
    }
  }

  // Index past the close delimiter matching the opener at `i`; the eof index
  // when unmatched.
  size_t skip_balanced(size_t i) const {
    if (i < close_of_open_.size() && is_opener(toks_[i])) {
      size_t close = close_of_open_[i];
      return close == SIZE_MAX ? toks_.size() - 1 : close + 1;
    }
    return i < toks_.size() ? i + 1 : toks_.size() - 1;
  }

  size_t skip_annotation(size_t i) const {
    // at '@'
    ++i;
    if (tok(i).is_ident()) ++i;
    while (tok(i).is_punct(".") && tok(i + 1).is_ident()) i += 2;
    if (tok(i).is_punct("(")) i = skip_balanced(i);
    return i;
  }

  // Skips a generic argument/parameter list starting at '<'. Returns the
  // index past the matching '>', or `i` unchanged when the brackets do not
  // look like generics (so '<' comparisons are left alone).
  size_t try_skip_generics(size_t i) const {
    if (!tok(i).is_punct("<")) return i;
    int depth = 0;
    size_t j = i;
    while (j < toks_.size() && toks_[j].kind != Tok::eof) {
      const Token& t = toks_[j];
      if (t.is_punct("<")) {
        ++depth;
      } else if (t.is_punct(">")) {
        --depth;
        if (depth == 0) return j + 1;
      } else if (t.is_ident() || t.is_punct(",") || t.is_punct(".") ||
                 t.is_punct("?") || t.is_punct("&") || t.is_punct("[") ||
                 t.is_punct("]")) {
        // plausible inside a type argument list
      } else {
        return i;
      }
      ++j;
    }
    return i;
  }

  // Parses a type reference (dotted name, generics, arrays). Returns the
  // unqualified last segment and leaves the cursor past the reference.
  std::optional<std::string> parse_type_ref(size_t& i) const {
    if (!tok(i).is_ident()) return std::nullopt;
    std::string last = tok(i).text;
    ++i;
    i = try_skip_generics(i);
    while (tok(i).is_punct(".") && tok(i + 1).is_ident()) {
      last = tok(i + 1).text;
      i += 2;
      i = try_skip_generics(i);
    }
    while (tok(i).is_punct("[") && tok(i + 1).is_punct("]")) i += 2;
    // varargs in parameter positions
    if (tok(i).is_punct(".") && tok(i + 1).is_punct(".") &&
        tok(i + 2).is_punct(".")) {
      i += 3;
    }
    return last;
  }

  // -- compilation unit ------------------------------------------------------

  void parse_compilation_unit() {
    size_t guard = i_;
    while (!at_end()) {
      const Token& t = cur();
      if (t.is("package") || t.is("import")) {
        while (!at_end() && !cur().is_punct(";")) ++i_;
        if (!at_end()) ++i_;
      } else if (t.is_punct("@") && !tok(i_ + 1).is("interface")) {
        i_ = skip_annotation(i_);
      } else if (modifier_words().count(t.text)) {
        ++i_;
      } else if (t.is("class") || t.is("interface") || t.is("enum") ||
                 t.is("record") ||
                 (t.is_punct("@") && tok(i_ + 1).is("interface"))) {
        parse_type_decl();
      } else if (t.is_punct(";")) {
        ++i_;
      } else {
        diag(i_, "unexpected_token",
             "unexpected \"" + snippet(t.text) + "\" at top level; skipping");
        ++i_;
      }
      if (i_ == guard) ++i_;  // always make progress
      guard = i_;
    }
  }

  // -- type declarations -----------------------------------------------------

  void parse_type_decl() {
    bool is_enum = cur().is("enum");
    if (cur().is_punct("@")) ++i_;  // @interface
    ++i_;                           // class/interface/enum/record keyword
    if (!cur().is_ident()) {
      diag(i_, "missing_type_name", "type declaration without a name; skipping");
      return;
    }
    size_t name_tok = i_;
    ParsedType pt;
    pt.decl.name = cur().text;
    pt.decl.location = loc(name_tok);
    ++i_;
    i_ = try_skip_generics(i_);
    if (cur().is_punct("(")) i_ = skip_balanced(i_);  // record header

    while (!at_end() && !cur().is_punct("{")) {
      if (cur().is("extends") || cur().is("implements")) {
        ++i_;
        for (;;) {
          size_t j = i_;
          auto name = parse_type_ref(j);
          if (!name) break;
          pt.decl.supertypes.push_back(*name);
          i_ = j;
          if (cur().is_punct(",")) ++i_;
          else break;
        }
      } else if (cur().is("permits")) {
        ++i_;
        while (!at_end() && !cur().is_punct("{")) ++i_;
      } else {
        ++i_;
      }
    }
    if (at_end()) {
      diag(name_tok, "truncated_type",
           "type " + pt.decl.name + " has no body; end of input");
      types_.push_back(std::move(pt));
      return;
    }
    int ti = static_cast<int>(types_.size());
    types_.push_back(std::move(pt));
    parse_type_body(ti, is_enum);
  }

  int make_anon_type(int outer, const std::string& supertype, size_t at) {
    ParsedType pt;
    std::string outer_name = outer >= 0 ? types_[outer].decl.name : "";
    pt.decl.name =
        outer_name + "$anon" + std::to_string(++types_[outer >= 0 ? outer : 0].anon_counter);
    pt.decl.supertypes.push_back(supertype);
    pt.decl.location = loc(at);
    int ti = static_cast<int>(types_.size());
    types_.push_back(std::move(pt));
    return ti;
  }

  void parse_type_body(int ti, bool is_enum) {
    // cursor at '{'
    if (type_depth_ >= kMaxNesting) {
      diag(i_, "nesting_limit", "type nesting too deep; body skipped");
      i_ = skip_balanced(i_);
      return;
    }
    ScopedDepth depth(type_depth_);
    ++i_;
    if (is_enum) parse_enum_constants(ti);
    size_t guard = i_;
    while (!at_end() && !cur().is_punct("}")) {
      parse_member(ti);
      if (i_ == guard) ++i_;
      guard = i_;
    }
    if (!at_end()) ++i_;  // '}'
  }

  void parse_enum_constants(int ti) {
    while (!at_end()) {
      while (cur().is_punct("@")) i_ = skip_annotation(i_);
      if (!cur().is_ident()) break;
      // A constant is IDENT [(args)] [{body}] followed by ',' or ';' or '}'.
      size_t j = i_ + 1;
      if (tok(j).is_punct("(")) j = skip_balanced(j);
      bool has_body = tok(j).is_punct("{");
      bool looks_like_constant = has_body || tok(j).is_punct(",") ||
                                 tok(j).is_punct(";") || tok(j).is_punct("}");
      if (!looks_like_constant) break;  // first member, not a constant
      size_t name_tok = i_;
      i_ = i_ + 1;
      if (cur().is_punct("(")) {
        size_t close = skip_balanced(i_);
        scan_expression_range(fresh_ctx(ti, "<clinit>"), i_ + 1, close - 1);
        i_ = close;
      }
      if (cur().is_punct("{")) {
        int anon = make_anon_type(ti, types_[ti].decl.name, name_tok);
        parse_type_body(anon, false);
      }
      if (cur().is_punct(",")) {
        ++i_;
        continue;
      }
      if (cur().is_punct(";")) {
        ++i_;
        break;
      }
      break;
    }
  }

  int fresh_ctx(int owner, std::string name) {
    MethodCtx ctx;
    ctx.owner = owner;
    ctx.name = std::move(name);
    ctxs_.push_back(std::move(ctx));
    return static_cast<int>(ctxs_.size() - 1);
  }

  void parse_member(int ti) {
    bool saw_static = false;
    bool saw_final = false;
    for (;;) {
      if (cur().is_punct("@") && !tok(i_ + 1).is("interface")) {
        i_ = skip_annotation(i_);
      } else if (modifier_words().count(cur().text)) {
        if (cur().is("static")) saw_static = true;
        if (cur().is("final")) saw_final = true;
        ++i_;
      } else {
        break;
      }
    }
    if (cur().is_punct(";")) {
      ++i_;
      return;
    }
    if (cur().is("class") || cur().is("interface") || cur().is("enum") ||
        cur().is("record") ||
        (cur().is_punct("@") && tok(i_ + 1).is("interface"))) {
      parse_type_decl();
      return;
    }
    if (cur().is_punct("{")) {  // initializer block
      int ctx = fresh_ctx(ti, saw_static ? "<clinit>" : "<init>");
      size_t close = skip_balanced(i_);
      walk_block(ctx, i_ + 1, close - 1, /*top_level=*/false);
      i_ = close;
      return;
    }
    if (cur().is_punct("<")) {  // generic method type parameters
      size_t j = try_skip_generics(i_);
      if (j == i_) {
        diag(i_, "unexpected_token", "stray '<' in type body; skipping");
        ++i_;
        return;
      }
      i_ = j;
    }

    // Constructor?
    if (cur().is_ident() && cur().text == types_[ti].decl.name &&
        tok(i_ + 1).is_punct("(")) {
      parse_method(ti, cur().text, i_);
      return;
    }

    size_t j = i_;
    auto type_name = parse_type_ref(j);
    if (!type_name || !tok(j).is_ident()) {
      diag(i_, "unexpected_token",
           "could not parse member of " + types_[ti].decl.name + "; skipping");
      ++i_;
      return;
    }
    size_t name_tok = j;
    if (tok(j + 1).is_punct("(")) {
      i_ = name_tok;
      parse_method(ti, tok(name_tok).text, name_tok);
      return;
    }
    // Field declarator list.
    i_ = name_tok;
    for (;;) {
      if (!cur().is_ident()) break;
      std::string fname = cur().text;
      ++i_;
      while (cur().is_punct("[") && tok(i_ + 1).is_punct("]")) i_ += 2;
      FieldInfo info;
      info.type = *type_name;
      info.is_final = saw_final;
      if (cur().is_punct("=")) {
        ++i_;
        size_t init_start = i_;
        size_t init_end = scan_to_declarator_end();
        info.has_init = true;
        info.init = {static_cast<int>(init_start), static_cast<int>(init_end)};
        scan_expression_range(fresh_ctx(ti, "<init>"), init_start, init_end);
      }
      types_[ti].fields.emplace(fname, std::move(info));
      if (cur().is_punct(",")) {
        ++i_;
        continue;
      }
      if (cur().is_punct(";")) ++i_;
      break;
    }
  }

  // Advances to the ',' or ';' terminating the current declarator initializer
  // (all brackets nest); returns the end index (exclusive).
  size_t scan_to_declarator_end() {
    int depth = 0;
    while (!at_end()) {
      const Token& t = cur();
      if (t.kind == Tok::punct) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        else if (t.text == ")" || t.text == "]" || t.text == "}") {
          if (depth == 0) return i_;  // closing brace of the type body
          --depth;
        } else if (depth == 0 && (t.text == "," || t.text == ";")) {
          return i_;
        }
      }
      ++i_;
    }
    return i_;
  }

  void parse_method(int ti, const std::string& name, size_t name_tok) {
    MethodDecl method;
    method.name = name;
    method.location = loc(name_tok);
    i_ = name_tok + 1;  // at '('
    int ctx = fresh_ctx(ti, name);

    // Parameters.
    size_t close = skip_balanced(i_);
    size_t p = i_ + 1;
    while (p < close - 1) {
      while (tok(p).is_punct("@")) p = skip_annotation(p);
      if (tok(p).is("final")) ++p;
      size_t q = p;
      auto ptype = parse_type_ref(q);
      if (ptype && tok(q).is_ident()) {
        ctxs_[ctx].params.emplace_back(tok(q).text, *ptype);
        ++method.parameter_count;
        q += 1;
        while (tok(q).is_punct("[") && tok(q + 1).is_punct("]")) q += 2;
        p = q;
      }
      // advance to next top-level comma
      int depth = 0;
      while (p < close - 1) {
        const Token& t = tok(p);
        if (t.is_punct("(") || t.is_punct("[") || t.is_punct("<")) ++depth;
        else if (t.is_punct(")") || t.is_punct("]") || t.is_punct(">")) --depth;
        else if (t.is_punct(",") && depth <= 0) {
          ++p;
          break;
        }
        ++p;
      }
      if (p >= close - 1) break;
    }
    i_ = close;

    while (cur().is("throws")) {
      ++i_;
      size_t j = i_;
      while (parse_type_ref(j)) {
        i_ = j;
        if (cur().is_punct(",")) {
          ++i_;
          j = i_;
        } else {
          break;
        }
      }
    }

    if (cur().is_punct(";")) {
      ++i_;  // abstract/native: no body
    } else if (cur().is_punct("{")) {
      size_t body_close = skip_balanced(i_);
      method.body_summary.emplace();  // filled during resolve()
      ctxs_[ctx].method_index = static_cast<int>(types_[ti].decl.methods.size());
      walk_block(ctx, i_ + 1, body_close - 1, /*top_level=*/true);
      i_ = body_close;
    } else if (cur().is("default")) {  // annotation member default
      while (!at_end() && !cur().is_punct(";")) ++i_;
      if (!at_end()) ++i_;
    } else {
      diag(name_tok, "missing_body",
           "method " + name + " has neither body nor ';'");
    }
    types_[ti].decl.methods.push_back(std::move(method));
  }

  // -- statement and expression walking --------------------------------------

  // Walks the token range [begin, end) of a code block belonging to `ctx`,
  // recording locals, calls, assignments and (for top_level) the top-level
  // statement ranges used by body summaries.
  void walk_block(int ctx, size_t begin, size_t end, bool top_level) {
    size_t i = begin;
    size_t guard = i;
    while (i < end && tok(i).kind != Tok::eof) {
      if (tok(i).is_punct(";")) {
        ++i;
        continue;
      }
      size_t start = i;
      i = walk_statement(ctx, i, end);
      if (top_level && i > start) {
        ctxs_[ctx].top_stmts.emplace_back(static_cast<int>(start),
                                          static_cast<int>(i));
      }
      if (i == guard) ++i;
      guard = i;
    }
  }

  size_t walk_statement(int ctx, size_t i, size_t end) {
    if (walk_depth_ >= kMaxNesting) {
      if (tok(i).is_punct("{")) return std::min(skip_balanced(i), end);
      size_t stop = scan_to_semicolon(i, end);
      return stop < end ? stop + 1 : stop;
    }
    ScopedDepth depth(walk_depth_);
    const Token& t = tok(i);
    if (t.is_punct("{")) {
      size_t close = std::min(skip_balanced(i), end + 1);
      walk_block(ctx, i + 1, close - 1, false);
      return std::min(close, end);
    }
    if (t.is("if")) {
      ++i;
      i = walk_paren_header(ctx, i, end);
      i = walk_statement(ctx, i, end);
      if (i < end && tok(i).is("else")) {
        ++i;
        i = walk_statement(ctx, i, end);
      }
      return i;
    }
    if (t.is("for") || t.is("while") || t.is("switch") || t.is("synchronized")) {
      ++i;
      i = walk_paren_header(ctx, i, end);
      if (t.is("while") && i < end && tok(i).is_punct(";")) return i + 1;
      return walk_statement(ctx, i, end);
    }
    if (t.is("do")) {
      ++i;
      i = walk_statement(ctx, i, end);
      if (i < end && tok(i).is("while")) {
        ++i;
        i = walk_paren_header(ctx, i, end);
      }
      if (i < end && tok(i).is_punct(";")) ++i;
      return i;
    }
    if (t.is("try")) {
      ++i;
      if (i < end && tok(i).is_punct("(")) i = walk_paren_header(ctx, i, end);
      i = walk_statement(ctx, i, end);  // try block
      while (i < end && (tok(i).is("catch") || tok(i).is("finally"))) {
        bool is_catch = tok(i).is("catch");
        ++i;
        if (is_catch && i < end && tok(i).is_punct("(")) {
          i = std::min(skip_balanced(i), end);
        }
        i = walk_statement(ctx, i, end);
      }
      return i;
    }
    if (t.is("case")) {
      while (i < end && !tok(i).is_punct(":") && !tok(i).is_punct("->")) ++i;
      return i < end ? i + 1 : i;
    }
    if (t.is("default") && tok(i + 1).is_punct(":")) return i + 2;
    if (t.is("break") || t.is("continue")) {
      while (i < end && !tok(i).is_punct(";")) ++i;
      return i < end ? i + 1 : i;
    }
    if (t.is("return") || t.is("throw")) {
      ++i;
      size_t expr_start = i;
      size_t stop = scan_to_semicolon(i, end);
      scan_expression_range(ctx, expr_start, stop);
      return stop < end ? stop + 1 : stop;
    }
    // Label?
    if (t.is_ident() && tok(i + 1).is_punct(":") && !tok(i + 1).is_punct("::")) {
      return walk_statement(ctx, i + 2, end);
    }
    // Local variable declaration?
    if (size_t after = try_parse_local_decl(ctx, i, end); after != i) return after;
    // Expression statement.
    size_t stop = scan_to_semicolon(i, end);
    scan_expression_range(ctx, i, stop);
    return stop < end ? stop + 1 : stop;
  }

  // Walks a parenthesized header: scans it for calls and local declarations
  // (for-init, enhanced-for, try-with-resources). Returns index past ')'.
  size_t walk_paren_header(int ctx, size_t i, size_t end) {
    if (i >= end || !tok(i).is_punct("(")) return i;
    size_t close = std::min(skip_balanced(i), end + 1);
    size_t inner = i + 1;
    size_t inner_end = close - 1;
    size_t after = try_parse_local_decl(ctx, inner, inner_end);
    scan_expression_range(ctx, after, inner_end);
    return std::min(close, end);
  }

  size_t scan_to_semicolon(size_t i, size_t end) const {
    int depth = 0;
    while (i < end && tok(i).kind != Tok::eof) {
      const Token& t = tok(i);
      if (t.kind == Tok::punct) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        else if (t.text == ")" || t.text == "]" || t.text == "}") {
          if (depth == 0) return i;  // unbalanced: statement ends here
          --depth;
        } else if (t.text == ";" && depth == 0) {
          return i;
        }
      }
      ++i;
    }
    return i;
  }

  // Attempts a local declaration at `i`. On success records the declared
  // locals (scanning initializers for calls) and returns the index past the
  // terminating ';' (or the end of the declarator inside a header). Returns
  // `i` unchanged when this is not a declaration.
  size_t try_parse_local_decl(int ctx, size_t i, size_t end) {
    size_t j = i;
    while (j < end && tok(j).is_punct("@")) j = skip_annotation(j);
    if (j < end && tok(j).is("final")) ++j;
    if (j >= end || !tok(j).is_ident()) return i;
    if (tok(j).is("new") || tok(j).is("return")) return i;
    size_t k = j;
    auto type_name = parse_type_ref(k);
    if (!type_name || k >= end || !tok(k).is_ident()) return i;
    const Token& after_name = tok(k + 1);
    bool decl_like = after_name.is_punct("=") || after_name.is_punct(";") ||
                     after_name.is_punct(",") || after_name.is_punct(":") ||
                     (after_name.is_punct("[") && tok(k + 2).is_punct("]"));
    if (!decl_like) return i;

    // declarators
    i = k;
    while (i < end && tok(i).is_ident()) {
      std::string name = tok(i).text;
      LocalVar var;
      var.type = *type_name;
      var.decl_tok = static_cast<int>(i);
      ++i;
      while (i + 1 < end && tok(i).is_punct("[") && tok(i + 1).is_punct("]"))
        i += 2;
      if (i < end && tok(i).is_punct(":")) {
        // enhanced-for: rest of header is the iterable expression
        ctxs_[ctx].locals.emplace(std::move(name), std::move(var));
        return i + 1;
      }
      if (i < end && tok(i).is_punct("=")) {
        ++i;
        size_t init_start = i;
        int depth = 0;
        while (i < end) {
          const Token& t = tok(i);
          if (t.kind == Tok::punct) {
            if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
            else if (t.text == ")" || t.text == "]" || t.text == "}") {
              if (depth == 0) break;
              --depth;
            } else if ((t.text == ";" || t.text == ",") && depth == 0) {
              break;
            }
          }
          ++i;
        }
        var.has_init = true;
        var.init = {static_cast<int>(init_start), static_cast<int>(i)};
        scan_expression_range(ctx, init_start, i);
      }
      ctxs_[ctx].locals.emplace(std::move(name), std::move(var));
      if (i < end && tok(i).is_punct(",")) {
        ++i;
        continue;
      }
      break;
    }
    if (i < end && tok(i).is_punct(";")) ++i;
    return i;
  }

  // Flat scan of an expression range: records calls, simple assignments and
  // anonymous class bodies (which are parsed structurally and excluded from
  // the enclosing region via holes).
  void scan_expression_range(int ctx, size_t begin, size_t end) {
    ScopedDepth depth(expr_depth_);
    size_t i = begin;
    while (i < end && tok(i).kind != Tok::eof) {
      const Token& t = tok(i);
      if (t.is("new") && expr_depth_ < kMaxNesting) {
        size_t j = i + 1;
        auto type_name = parse_type_ref(j);
        if (type_name && j < end && tok(j).is_punct("(")) {
          size_t close = skip_balanced(j);
          scan_expression_range(ctx, j + 1, std::min(close - 1, end));
          if (close < end && tok(close).is_punct("{")) {
            // anonymous subclass
            int anon = make_anon_type(ctxs_[ctx].owner, *type_name, i + 1);
            size_t body_close = skip_balanced(close);
            size_t saved = i_;
            i_ = close;
            parse_type_body(anon, false);
            i_ = saved;
            ctxs_[ctx].holes.emplace_back(static_cast<int>(close),
                                          static_cast<int>(body_close));
            i = body_close;
            continue;
          }
          i = close;
          continue;
        }
        ++i;
        continue;
      }
      if (t.is_ident() && tok(i + 1).is_punct("(") && !is_call_keyword(t.text)) {
        record_call(ctx, i);
        ++i;
        continue;
      }
      if (t.is_ident() && is_assign_op(tok(i + 1))) {
        record_assign(ctx, i, end);
        ++i;
        continue;
      }
      if (t.is_ident() && (tok(i + 1).is_punct("++") || tok(i + 1).is_punct("--") ||
                           tok(i - 1).is_punct("++") || tok(i - 1).is_punct("--"))) {
        record_mutation(ctx, i);
        ++i;
        continue;
      }
      ++i;
    }
  }

  static bool is_call_keyword(const std::string& t) {
    return t == "if" || t == "for" || t == "while" || t == "switch" ||
           t == "catch" || t == "synchronized" || t == "return" ||
           t == "new" || t == "assert" || t == "throw";
  }

  static bool is_assign_op(const Token& t) {
    return t.kind == Tok::punct &&
           (t.text == "=" || t.text == "+=" || t.text == "-=" ||
            t.text == "*=" || t.text == "/=" || t.text == "%=" ||
            t.text == "&=" || t.text == "|=" || t.text == "^=");
  }

  // Increment/decrement: counts as a write, has no usable right-hand side.
  void record_mutation(int ctx, size_t name_tok) {
    SimpleAssign a;
    a.ctx = ctx;
    a.name = tok(name_tok).text;
    a.tok = static_cast<int>(name_tok);
    if (tok(name_tok - 1).is_punct(".")) {
      if (tok(name_tok - 2).is("this") || tok(name_tok - 2).is_ident()) {
        a.qualifier = tok(name_tok - 2).text;
      } else {
        return;
      }
    }
    assigns_.push_back(std::move(a));
  }

  void record_assign(int ctx, size_t name_tok, size_t end) {
    SimpleAssign a;
    a.ctx = ctx;
    a.name = tok(name_tok).text;
    a.tok = static_cast<int>(name_tok);
    if (tok(name_tok - 1).is_punct(".") &&
        (tok(name_tok - 2).is("this") || tok(name_tok - 2).is_ident())) {
      a.qualifier = tok(name_tok - 2).text;
    } else if (tok(name_tok - 1).is_punct(".")) {
      return;  // complex lhs, out of scope
    }
    size_t rhs_start = name_tok + 2;
    size_t rhs_end = scan_to_semicolon(rhs_start, end);
    a.rhs = {static_cast<int>(rhs_start), static_cast<int>(rhs_end)};
    assigns_.push_back(std::move(a));
  }

  void record_call(int ctx, size_t name_tok) {
    RawCall call;
    call.ctx = ctx;
    call.name_tok = static_cast<int>(name_tok);

    // arguments; unbalanced call parens carry none
    size_t open = name_tok + 1;
    size_t close = skip_balanced(open);
    bool balanced = open < close_of_open_.size() &&
                    close_of_open_[open] != SIZE_MAX;
    if (balanced && close >= open + 2 && !tok(open + 1).is_punct(")")) {
      int depth = 0;
      size_t arg_start = open + 1;
      for (size_t i = open + 1; i < close - 1; ++i) {
        const Token& t = tok(i);
        if (t.kind == Tok::punct) {
          if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
          else if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
          else if (t.text == "," && depth == 0) {
            call.args.emplace_back(static_cast<int>(arg_start),
                                   static_cast<int>(i));
            arg_start = i + 1;
          }
        }
      }
      call.args.emplace_back(static_cast<int>(arg_start),
                             static_cast<int>(close - 1));
    }

    // receiver
    if (!tok(name_tok - 1).is_punct(".")) {
      call.recv = RawCall::Recv::bare;
    } else {
      size_t r = name_tok - 2;
      const Token& rt = tok(r);
      if (rt.is("this") || rt.is("super")) {
        call.recv = tok(r - 1).is_punct(".") ? RawCall::Recv::unknown
                                             : RawCall::Recv::bare;
      } else if (rt.is_ident()) {
        // dotted chain a.b.c
        std::vector<std::string> segs{rt.text};
        size_t q = r;
        while (tok(q - 1).is_punct(".") && tok(q - 2).is_ident()) {
          segs.push_back(tok(q - 2).text);
          q -= 2;
        }
        if (tok(q - 1).is_punct(")")) {
          call.recv = RawCall::Recv::unknown;  // rooted at a call result
        } else if (tok(q - 1).is("new")) {
          call.recv = RawCall::Recv::unknown;
        } else {
          call.recv = RawCall::Recv::dotted;
          std::string dotted;
          for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
            if (!dotted.empty()) dotted += '.';
            dotted += *it;
          }
          call.recv_dotted = std::move(dotted);
        }
      } else if (rt.is_punct(")")) {
        // receiver is a call result: Foo.bar(...).m() / bar(...).m() /
        // new Foo(...).m()
        call.recv = RawCall::Recv::chain;
        size_t open_paren = matching_open(r);
        if (open_paren != SIZE_MAX && open_paren > 0 &&
            tok(open_paren - 1).is_ident()) {
          call.chain_method = tok(open_paren - 1).text;
          size_t root = open_paren - 1;
          // Walk back over a dotted prefix to see whether this is a
          // constructor: new Foo(...).m() or new a.b.Foo(...).m().
          size_t q = root;
          while (q >= 2 && tok(q - 1).is_punct(".") && tok(q - 2).is_ident())
            q -= 2;
          if (q >= 1 && tok(q - 1).is("new")) {
            call.chain_root_is_new = true;
            call.chain_root = call.chain_method;  // the class simple name
            call.chain_method.clear();
          } else if (root >= 2 && tok(root - 1).is_punct(".") &&
                     tok(root - 2).is_ident()) {
            call.chain_root = tok(root - 2).text;
          }
        } else {
          call.recv = RawCall::Recv::unknown;
        }
      } else {
        call.recv = RawCall::Recv::unknown;
      }
    }
    calls_.push_back(std::move(call));
  }

  // Index of the '(' matching the ')' at `close_idx`.
  size_t matching_open(size_t close_idx) const {
    return close_idx < open_of_close_.size() ? open_of_close_[close_idx]
                                             : SIZE_MAX;
  }

  // --------------------------------------------------------------------------
  // Resolution (second pass)

  static const std::map<std::string, ReceiverKind>& type_kind_map() {
    static const std::map<std::string, ReceiverKind> kMap = {
        {"Context", ReceiverKind::context_like},
        {"ContextWrapper", ReceiverKind::context_like},
        {"ContextThemeWrapper", ReceiverKind::context_like},
        {"Activity", ReceiverKind::context_like},
        {"AppCompatActivity", ReceiverKind::context_like},
        {"FragmentActivity", ReceiverKind::context_like},
        {"Service", ReceiverKind::context_like},
        {"IntentService", ReceiverKind::context_like},
        {"Application", ReceiverKind::context_like},
        {"PendingIntent", ReceiverKind::pending_intent},
        {"IntentFilter", ReceiverKind::intent_filter},
        {"UriMatcher", ReceiverKind::uri_matcher},
        {"Binder", ReceiverKind::binder},
        {"WebView", ReceiverKind::web_view},
        {"LocalBroadcastManager", ReceiverKind::local_broadcast_manager},
    };
    return kMap;
  }

  static const std::set<std::string>& context_like_supertypes() {
    static const std::set<std::string> kSet = {
        "Activity",       "AppCompatActivity", "FragmentActivity",
        "Service",        "IntentService",     "JobIntentService",
        "BroadcastReceiver", "ContextWrapper", "ContextThemeWrapper",
        "Application"};
    return kSet;
  }

  static const std::set<std::string>& context_accessors() {
    static const std::set<std::string> kSet = {
        "getApplicationContext", "getBaseContext", "getApplication",
        "getContext",            "getActivity",    "requireContext",
        "requireActivity"};
    return kSet;
  }

  bool type_is_context_like(const std::string& name, int depth = 0) const {
    if (depth > 8) return false;
    if (context_like_supertypes().count(name)) return true;
    for (const auto& pt : types_) {
      if (pt.decl.name != name) continue;
      for (const auto& super : pt.decl.supertypes) {
        if (type_is_context_like(super, depth + 1)) return true;
      }
    }
    return false;
  }

  bool owner_is_context_like(int ctx) const {
    int ti = ctxs_[ctx].owner;
    if (ti < 0) return false;
    for (const auto& super : types_[ti].decl.supertypes) {
      if (type_is_context_like(super)) return true;
    }
    return false;
  }

  // Declared type of `name` as seen from `ctx`: locals, then parameters,
  // then fields of the owning type.
  std::optional<std::string> declared_type(int ctx, const std::string& name) const {
    const MethodCtx& mc = ctxs_[ctx];
    if (auto it = mc.locals.find(name); it != mc.locals.end()) return it->second.type;
    for (const auto& [pname, ptype] : mc.params) {
      if (pname == name) return ptype;
    }
    if (mc.owner >= 0) {
      const auto& fields = types_[mc.owner].fields;
      if (auto it = fields.find(name); it != fields.end()) return it->second.type;
    }
    return std::nullopt;
  }

  ReceiverKind resolve_receiver(const RawCall& call) const {
    switch (call.recv) {
      case RawCall::Recv::bare:
        return owner_is_context_like(call.ctx) ? ReceiverKind::context_like
                                               : ReceiverKind::unknown;
      case RawCall::Recv::dotted: {
        const std::string& d = call.recv_dotted;
        if (d.find('.') == std::string::npos) {
          if (auto t = declared_type(call.ctx, d)) {
            auto it = type_kind_map().find(*t);
            return it != type_kind_map().end() ? it->second
                                               : ReceiverKind::unknown;
          }
          auto it = type_kind_map().find(d);
          return it != type_kind_map().end() ? it->second : ReceiverKind::unknown;
        }
        auto it = type_kind_map().find(last_segment(d));
        return it != type_kind_map().end() ? it->second : ReceiverKind::unknown;
      }
      case RawCall::Recv::chain: {
        if (call.chain_root_is_new) {
          auto it = type_kind_map().find(call.chain_root);
          return it != type_kind_map().end() ? it->second : ReceiverKind::unknown;
        }
        // Result of a static factory keeps the class kind:
        // LocalBroadcastManager.getInstance(c).registerReceiver(...).
        if (auto it = type_kind_map().find(call.chain_root);
            it != type_kind_map().end()) {
          return it->second;
        }
        if (context_accessors().count(call.chain_method)) {
          return ReceiverKind::context_like;
        }
        return ReceiverKind::unknown;
      }
      case RawCall::Recv::unknown:
        return ReceiverKind::unknown;
    }
    return ReceiverKind::unknown;
  }

  // -- constant evaluation ----------------------------------------------------

  std::pair<size_t, size_t> trim_expr(size_t begin, size_t end) const {
    for (;;) {
      // fully enclosing parens
      while (begin < end && tok(begin).is_punct("(") &&
             skip_balanced(begin) == end) {
        ++begin;
        --end;
      }
      // cast prefix: '(' type ')' rest
      if (begin < end && tok(begin).is_punct("(")) {
        size_t close = skip_balanced(begin);
        if (close < end && close > begin + 1) {
          bool type_like = true;
          for (size_t i = begin + 1; i + 1 < close; ++i) {
            const Token& t = tok(i);
            if (!(t.is_ident() || t.is_punct(".") || t.is_punct("<") ||
                  t.is_punct(">") || t.is_punct("[") || t.is_punct("]") ||
                  t.is_punct(","))) {
              type_like = false;
              break;
            }
          }
          const Token& after = tok(close);
          bool cast_target = after.is_ident() || after.kind == Tok::string_lit ||
                             after.kind == Tok::number || after.is_punct("(");
          if (type_like && cast_target) {
            begin = close;
            continue;
          }
        }
      }
      return {begin, end};
    }
  }

  std::optional<ConstValue> eval_const(int ctx, size_t begin, size_t end,
                                       int depth) const {
    if (depth > 8 || begin >= end) return std::nullopt;
    std::tie(begin, end) = trim_expr(begin, end);
    if (begin >= end) return std::nullopt;

    // Top-level '+' concatenation / addition.
    std::vector<std::pair<size_t, size_t>> parts;
    {
      int nest = 0;
      size_t part_start = begin;
      for (size_t i = begin; i < end; ++i) {
        const Token& t = tok(i);
        if (t.kind != Tok::punct) continue;
        if (t.text == "(" || t.text == "[" || t.text == "{") ++nest;
        else if (t.text == ")" || t.text == "]" || t.text == "}") --nest;
        else if (t.text == "+" && nest == 0 && i != begin) {
          parts.emplace_back(part_start, i);
          part_start = i + 1;
        }
      }
      parts.emplace_back(part_start, end);
    }
    if (parts.size() > 1) {
      std::vector<ConstValue> values;
      for (auto [b, e] : parts) {
        auto v = eval_const(ctx, b, e, depth + 1);
        if (!v) return std::nullopt;
        values.push_back(std::move(*v));
      }
      bool any_string = std::any_of(values.begin(), values.end(), [](auto& v) {
        return v.kind == ConstKind::string;
      });
      if (any_string) {
        std::string out;
        for (const auto& v : values) {
          switch (v.kind) {
            case ConstKind::string: out += v.string_value; break;
            case ConstKind::integer: out += std::to_string(v.int_value); break;
            case ConstKind::boolean: out += v.bool_value ? "true" : "false"; break;
            case ConstKind::null_value: out += "null"; break;
          }
        }
        return ConstValue::make_string(std::move(out));
      }
      bool all_int = std::all_of(values.begin(), values.end(), [](auto& v) {
        return v.kind == ConstKind::integer;
      });
      if (all_int) {
        long long sum = 0;
        for (const auto& v : values) sum += v.int_value;
        return ConstValue::make_int(sum);
      }
      return std::nullopt;
    }

    size_t n = end - begin;
    const Token& first = tok(begin);
    if (n == 1) {
      if (first.kind == Tok::string_lit)
        return ConstValue::make_string(first.text);
      if (first.kind == Tok::number) return parse_int_literal(first.text);
      if (first.is("true")) return ConstValue::make_bool(true);
      if (first.is("false")) return ConstValue::make_bool(false);
      if (first.is("null")) return ConstValue::make_null();
      if (first.is_ident()) return eval_name(ctx, first.text, depth);
      return std::nullopt;
    }
    if (n == 2 && first.is_punct("-") && tok(begin + 1).kind == Tok::number) {
      auto v = parse_int_literal(tok(begin + 1).text);
      if (v) v->int_value = -v->int_value;
      return v;
    }
    if (n == 3 && first.is_ident() && tok(begin + 1).is_punct(".") &&
        tok(begin + 2).is_ident()) {
      const std::string& qual = first.text;
      const std::string& member = tok(begin + 2).text;
      if (qual == "this") return eval_field(ctxs_[ctx].owner, member, ctx, depth);
      for (size_t ti = 0; ti < types_.size(); ++ti) {
        if (types_[ti].decl.name == qual) {
          return eval_field(static_cast<int>(ti), member, ctx, depth);
        }
      }
      return std::nullopt;
    }
    return std::nullopt;
  }

  static std::optional<ConstValue> parse_int_literal(const std::string& text) {
    std::string digits;
    int base = 10;
    size_t start = 0;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      base = 16;
      start = 2;
    } else if (text.size() > 2 && text[0] == '0' &&
               (text[1] == 'b' || text[1] == 'B')) {
      base = 2;
      start = 2;
    }
    for (size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (c == '_') continue;
      if (c == 'l' || c == 'L') continue;
      if (c == '.' || c == 'e' || c == 'E' || c == 'f' || c == 'F' ||
          c == 'd' || c == 'D') {
        if (base != 16) return std::nullopt;  // floating literal
      }
      digits.push_back(c);
    }
    long long value = 0;
    auto [p, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
    if (ec != std::errc() || p != digits.data() + digits.size())
      return std::nullopt;
    return ConstValue::make_int(value);
  }

  std::optional<ConstValue> eval_name(int ctx, const std::string& name,
                                      int depth) const {
    const MethodCtx& mc = ctxs_[ctx];
    if (auto it = mc.locals.find(name); it != mc.locals.end()) {
      const LocalVar& var = it->second;
      if (var.has_init && var.assigns.empty()) {
        return eval_const(ctx, var.init.first, var.init.second, depth + 1);
      }
      if (!var.has_init && var.assigns.size() == 1) {
        auto [b, e] = var.assigns[0].second;
        return eval_const(ctx, b, e, depth + 1);
      }
      return std::nullopt;
    }
    for (const auto& [pname, ptype] : mc.params) {
      if (pname == name) return std::nullopt;
    }
    return eval_field(mc.owner, name, ctx, depth);
  }

  std::optional<ConstValue> eval_field(int ti, const std::string& name, int ctx,
                                       int depth) const {
    if (ti < 0) return std::nullopt;
    auto it = types_[ti].fields.find(name);
    if (it == types_[ti].fields.end()) return std::nullopt;
    const FieldInfo& f = it->second;
    if (!f.has_init) return std::nullopt;
    if (!f.is_final && f.extra_assigns > 0) return std::nullopt;
    return eval_const(ctx, f.init.first, f.init.second, depth + 1);
  }

  // -- intent classification --------------------------------------------------

  static bool is_targeting_method(const std::string& name) {
    return name == "setClass" || name == "setComponent" ||
           name == "setClassName" || name == "setPackage";
  }

  // True when the argument token range looks like `Foo.class` or
  // `pkg.Foo.class`.
  bool arg_is_class_literal(size_t begin, size_t end) const {
    return end - begin >= 2 && tok(end - 1).is("class") &&
           tok(end - 2).is_punct(".");
  }

  bool arg_is_stringish(int ctx, size_t begin, size_t end) const {
    auto v = eval_const(ctx, begin, end, 0);
    if (v && v->kind == ConstKind::string) return true;
    // Convention: unresolvable SCREAMING_CASE names are action constants.
    if (end - begin >= 1 && tok(end - 1).is_ident() &&
        is_screaming_case(tok(end - 1).text)) {
      if (end - begin == 1) return true;
      if (tok(end - 2).is_punct(".")) return true;
    }
    return false;
  }

  // Classification of a `new Intent(...)` expression (plus trailing chain).
  IntentClass classify_intent_ctor(int ctx, size_t begin, size_t end) const {
    size_t j = begin + 1;  // past 'new'
    auto type_name = parse_type_ref(j);
    if (!type_name || *type_name != "Intent" || j >= end ||
        !tok(j).is_punct("(")) {
      return IntentClass::unknown;
    }
    size_t close = skip_balanced(j);
    // Chained targeting call after the constructor.
    for (size_t k = close; k + 1 < end; ++k) {
      if (tok(k).is_punct(".") && tok(k + 1).is_ident() &&
          is_targeting_method(tok(k + 1).text) && tok(k + 2).is_punct("(")) {
        return IntentClass::explicit_target;
      }
    }
    // Constructor arguments.
    std::vector<std::pair<size_t, size_t>> args;
    if (close > j + 2) {
      int depth = 0;
      size_t arg_start = j + 1;
      for (size_t k = j + 1; k < close - 1; ++k) {
        const Token& t = tok(k);
        if (t.kind != Tok::punct) continue;
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        else if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
        else if (t.text == "," && depth == 0) {
          args.emplace_back(arg_start, k);
          arg_start = k + 1;
        }
      }
      args.emplace_back(arg_start, close - 1);
    }
    for (auto [b, e] : args) {
      auto [tb, te] = trim_expr(b, e);
      if (arg_is_class_literal(tb, te)) return IntentClass::explicit_target;
      if (te > tb + 1 && tok(tb).is("new") && tok(tb + 1).is("ComponentName"))
        return IntentClass::explicit_target;
    }
    if (args.empty()) return IntentClass::implicit;
    if (arg_is_stringish(ctx, args[0].first, args[0].second))
      return IntentClass::implicit;
    return IntentClass::unknown;
  }

  // Traces an intent-valued argument. `use_tok` is the position of the call
  // the argument feeds, for ordering targeting calls.
  IntentClass classify_intent_arg(int ctx, size_t begin, size_t end,
                                  int use_tok) const {
    std::tie(begin, end) = trim_expr(begin, end);
    if (begin >= end) return IntentClass::unknown;
    if (tok(begin).is("new")) return classify_intent_ctor(ctx, begin, end);
    if (end - begin == 1 && tok(begin).is_ident()) {
      const std::string& name = tok(begin).text;
      const MethodCtx& mc = ctxs_[ctx];
      auto it = mc.locals.find(name);
      if (it == mc.locals.end()) return IntentClass::unknown;
      const LocalVar& var = it->second;
      std::optional<std::pair<int, int>> init;
      if (var.has_init && var.assigns.empty()) init = var.init;
      else if (!var.has_init && var.assigns.size() == 1)
        init = var.assigns[0].second;
      if (!init) return IntentClass::unknown;  // reassigned or never assigned
      // Targeting call on the same variable before the use?
      for (const RawCall& rc : calls_) {
        if (rc.ctx != ctx || rc.recv != RawCall::Recv::dotted) continue;
        if (rc.recv_dotted != name || rc.name_tok >= use_tok) continue;
        if (is_targeting_method(tok(rc.name_tok).text))
          return IntentClass::explicit_target;
      }
      size_t b = static_cast<size_t>(init->first);
      size_t e = static_cast<size_t>(init->second);
      std::tie(b, e) = trim_expr(b, e);
      if (b < e && tok(b).is("new")) return classify_intent_ctor(ctx, b, e);
      return IntentClass::unknown;
    }
    return IntentClass::unknown;
  }

  bool arg_traces_to_intent(int ctx, size_t begin, size_t end) const {
    std::tie(begin, end) = trim_expr(begin, end);
    if (begin >= end) return false;
    if (tok(begin).is("new")) {
      size_t j = begin + 1;
      auto name = parse_type_ref(j);
      return name && *name == "Intent";
    }
    if (end - begin == 1 && tok(begin).is_ident()) {
      auto t = declared_type(ctx, tok(begin).text);
      return t && *t == "Intent";
    }
    return false;
  }

  // -- body summaries ----------------------------------------------------------

  bool stmt_matches(const std::vector<std::string_view>& pattern, size_t begin,
                    size_t end) const {
    if (end - begin != pattern.size()) return false;
    for (size_t i = 0; i < pattern.size(); ++i) {
      if (pattern[i] == "*") continue;
      if (tok(begin + i).text != pattern[i]) return false;
    }
    return true;
  }

  bool is_super_call_stmt(size_t begin, size_t end) const {
    size_t i = begin;
    if (i < end && tok(i).is("return")) ++i;
    if (i >= end || !tok(i).is("super")) return false;
    ++i;
    if (i >= end || !tok(i).is_punct(".")) return false;
    ++i;
    if (i >= end || !tok(i).is_ident()) return false;
    ++i;
    if (i >= end || !tok(i).is_punct("(")) return false;
    size_t close = skip_balanced(i);
    return close < end && tok(close).is_punct(";") && close + 1 == end;
  }

  bool is_load_url_stmt(int ctx, size_t begin, size_t end) const {
    // X.loadUrl(...);  where X is the first parameter or a WebView variable
    if (end - begin < 5) return false;
    if (!tok(begin).is_ident() || !tok(begin + 1).is_punct(".") ||
        !tok(begin + 2).is("loadUrl") || !tok(begin + 3).is_punct("(")) {
      return false;
    }
    const std::string& recv = tok(begin).text;
    const MethodCtx& mc = ctxs_[ctx];
    if (!mc.params.empty() && mc.params[0].first == recv) return true;
    auto t = declared_type(ctx, recv);
    return t && *t == "WebView";
  }

  BodySummary summarize_body(const MethodCtx& mc) const {
    BodySummary summary;
    summary.statement_count = static_cast<int>(mc.top_stmts.size());
    for (const RawCall& rc : calls_) {
      if (rc.ctx == &mc - ctxs_.data()) {
        summary.calls_within.push_back(tok(rc.name_tok).text);
      }
    }
    if (mc.top_stmts.empty()) return summary;

    auto [b0, e0] = mc.top_stmts[0];
    if (summary.statement_count == 1) {
      size_t b = b0, e = e0;
      // statement ranges include the trailing ';' unless it was consumed
      size_t stmt_end = tok(e - 1).is_punct(";") ? e : e;
      if (stmt_matches({"return", "false", ";"}, b, stmt_end)) {
        summary.sole_statement_kind = SoleStatementKind::return_false;
      } else if (stmt_matches({"return", "true", ";"}, b, stmt_end)) {
        summary.sole_statement_kind = SoleStatementKind::return_true;
      } else if (stmt_matches({"return", "null", ";"}, b, stmt_end)) {
        summary.sole_statement_kind = SoleStatementKind::return_null;
      } else if (is_super_call_stmt(b, stmt_end)) {
        summary.sole_statement_kind = SoleStatementKind::super_call_only;
      } else {
        summary.sole_statement_kind = SoleStatementKind::other;
      }
      return summary;
    }
    if (summary.statement_count == 2) {
      int ctx_idx = static_cast<int>(&mc - ctxs_.data());
      auto [b1, e1] = mc.top_stmts[1];
      if (is_load_url_stmt(ctx_idx, b0, e0) && tok(b1).is("return")) {
        summary.sole_statement_kind = SoleStatementKind::load_url_then_return;
        return summary;
      }
    }
    summary.sole_statement_kind = SoleStatementKind::other;
    return summary;
  }

  // -- final assembly ----------------------------------------------------------

  void resolve(SourceUnit& unit) {
    // Attribute simple assignments to locals or fields.
    for (const SimpleAssign& a : assigns_) {
      if (a.ctx < 0) continue;
      MethodCtx& mc = ctxs_[a.ctx];
      if (a.qualifier.empty()) {
        if (auto it = mc.locals.find(a.name); it != mc.locals.end()) {
          if (a.tok > it->second.decl_tok) {
            it->second.assigns.push_back({a.tok, a.rhs});
            continue;
          }
        }
        if (mc.owner >= 0) {
          if (auto it = types_[mc.owner].fields.find(a.name);
              it != types_[mc.owner].fields.end()) {
            ++it->second.extra_assigns;
          }
        }
        continue;
      }
      if (a.qualifier == "this") {
        if (mc.owner >= 0) {
          if (auto it = types_[mc.owner].fields.find(a.name);
              it != types_[mc.owner].fields.end()) {
            ++it->second.extra_assigns;
          }
        }
        continue;
      }
      for (auto& pt : types_) {
        if (pt.decl.name == a.qualifier) {
          if (auto it = pt.fields.find(a.name); it != pt.fields.end()) {
            ++it->second.extra_assigns;
          }
        }
      }
    }

    // Body summaries.
    for (const MethodCtx& mc : ctxs_) {
      if (mc.method_index < 0 || mc.owner < 0) continue;
      MethodDecl& method = types_[mc.owner].decl.methods[mc.method_index];
      if (method.body_summary) method.body_summary = summarize_body(mc);
    }

    // Call sites.
    for (const RawCall& rc : calls_) {
      CallSite site;
      site.method_name = tok(rc.name_tok).text;
      site.location = loc(rc.name_tok);
      site.receiver_kind = resolve_receiver(rc);
      if (rc.ctx >= 0) {
        const MethodCtx& mc = ctxs_[rc.ctx];
        site.enclosing_method = mc.name;
        if (mc.owner >= 0) site.enclosing_type = types_[mc.owner].decl.name;
      }
      for (auto [b, e] : rc.args) {
        ArgSummary arg;
        auto [tb, te] = trim_expr(b, e);
        arg.is_null_literal = (te - tb == 1) && tok(tb).is("null");
        arg.const_value = eval_const(rc.ctx, b, e, 0);
        if (arg.is_null_literal && !arg.const_value)
          arg.const_value = ConstValue::make_null();
        if (arg_traces_to_intent(rc.ctx, b, e)) {
          arg.intent_class = classify_intent_arg(rc.ctx, b, e, rc.name_tok);
        }
        site.argument_summaries.push_back(std::move(arg));
      }
      unit.call_sites.push_back(std::move(site));
    }
    std::stable_sort(unit.call_sites.begin(), unit.call_sites.end(),
                     [](const CallSite& a, const CallSite& b) {
                       return std::tie(a.location.line, a.location.column) <
                              std::tie(b.location.line, b.location.column);
                     });

    for (auto& pt : types_) unit.type_decls.push_back(std::move(pt.decl));

    if (suppressed_diags_ > 0) {
      diags_.push_back({{path_, 1, 1},
                        Severity::warning,
                        "diagnostics_truncated",
                        std::to_string(suppressed_diags_) +
                            " further parse diagnostics suppressed"});
    }
  }
};

}  // namespace

std::string_view receiver_kind_id(ReceiverKind k) {
  switch (k) {
    case ReceiverKind::context_like: return "context_like";
    case ReceiverKind::pending_intent: return "pending_intent";
    case ReceiverKind::intent_filter: return "intent_filter";
    case ReceiverKind::uri_matcher: return "uri_matcher";
    case ReceiverKind::binder: return "binder";
    case ReceiverKind::web_view: return "web_view";
    case ReceiverKind::local_broadcast_manager: return "local_broadcast_manager";
    case ReceiverKind::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view intent_class_id(IntentClass c) {
  switch (c) {
    case IntentClass::implicit: return "implicit";
    case IntentClass::explicit_target: return "explicit";
    case IntentClass::unknown: return "unknown";
  }
  return "unknown";
}

SourceUnit parse_source_unit(std::string_view text, const std::string& path) {
  SourceUnit unit;
  unit.path = path;
  std::vector<Diagnostic> lex_diags;
  std::vector<Token> tokens = Lexer(text, path, lex_diags).run();
  UnitParser parser(std::move(tokens), path);
  parser.run(unit);
  unit.diagnostics = std::move(lex_diags);
  for (auto& d : parser.diagnostics()) unit.diagnostics.push_back(std::move(d));
  return unit;
}

}  // namespace iccsmell

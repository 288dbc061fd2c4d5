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

namespace iccsmell {

// How the receiver expression of a call was classified. Classification is
// name-based and intra-file: declared types of locals/parameters/fields in
// the same file, a few well-known static receivers, and bare calls inside
// context-like subtypes.
enum class ReceiverKind {
  context_like,
  pending_intent,
  intent_filter,
  uri_matcher,
  binder,
  web_view,
  local_broadcast_manager,
  unknown,
};

std::string_view receiver_kind_id(ReceiverKind k);

// Whether an intent argument names its target component. `explicit_target`
// is only assigned when a targeting constructor or a setClass/setComponent/
// setClassName/setPackage call on the same variable is visible inside the
// enclosing method.
enum class IntentClass { implicit, explicit_target, unknown };

std::string_view intent_class_id(IntentClass c);

enum class ConstKind { string, integer, boolean, null_value };

struct ConstValue {
  ConstKind kind = ConstKind::null_value;
  std::string string_value;
  long long int_value = 0;
  bool bool_value = false;

  static ConstValue make_string(std::string s) {
    return {ConstKind::string, std::move(s), 0, false};
  }
  static ConstValue make_int(long long v) { return {ConstKind::integer, "", v, false}; }
  static ConstValue make_bool(bool v) { return {ConstKind::boolean, "", 0, v}; }
  static ConstValue make_null() { return {ConstKind::null_value, "", 0, false}; }
};

struct ArgSummary {
  std::optional<ConstValue> const_value;
  bool is_null_literal = false;
  // Populated only for arguments traced to an intent construction or an
  // Intent-typed variable.
  std::optional<IntentClass> intent_class;
};

struct CallSite {
  std::string method_name;
  ReceiverKind receiver_kind = ReceiverKind::unknown;
  std::vector<ArgSummary> argument_summaries;
  std::string enclosing_type;
  std::string enclosing_method;
  SourceLocation location;  // position of the method name token
};

enum class SoleStatementKind {
  return_false,
  return_true,
  return_null,
  super_call_only,
  load_url_then_return,
  other,
};

struct BodySummary {
  std::optional<SoleStatementKind> sole_statement_kind;
  int statement_count = 0;
  std::vector<std::string> calls_within;  // callee names, document order
};

struct MethodDecl {
  std::string name;
  int parameter_count = 0;
  std::optional<BodySummary> body_summary;  // absent for abstract/native
  SourceLocation location;                  // position of the name token
};

struct TypeDecl {
  std::string name;  // simple name; anonymous types get "<outer>$anonN"
  std::vector<std::string> supertypes;  // unqualified extends/implements names
  std::vector<MethodDecl> methods;
  SourceLocation location;
};

struct SourceUnit {
  std::string path;
  std::vector<TypeDecl> type_decls;
  std::vector<CallSite> call_sites;  // ordered by (line, column)
  std::vector<Diagnostic> diagnostics;
};

/// Builds the syntactic model of one Java-syntax source file. Never throws:
/// unparseable regions are skipped with a diagnostic and the remainder is
/// still modeled.
SourceUnit parse_source_unit(std::string_view text, const std::string& path);

}  // namespace iccsmell

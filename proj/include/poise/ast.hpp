// Copyright 2026 The Poise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Typed AST for the Poise policy language. Produced by the parser, resolved
// in place by validate(), consumed by the compiler and by the AST
// interpreter used as a differential oracle in tests.

#ifndef POISE_AST_HPP_
#define POISE_AST_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poise/diag.hpp"

namespace poise {

// ---------------------------------------------------------------------------
// Constants

enum class ConstKind : uint8_t {
  kInt,     // plain integer (decimal or hex literal)
  kIp,      // dotted-quad IPv4, held as a 32-bit value
  kString,  // quoted string; interned to a 32-bit id by validate()
  kPrefix,  // IPv4 prefix a.b.c.d/len (list items only)
  kMasked,  // mask(value, mask) wildcard key (list items only)
};

struct Const {
  ConstKind kind = ConstKind::kInt;
  uint64_t value = 0;     // int/ip value; interned id for strings after validate()
  uint8_t prefix_len = 0; // kPrefix
  uint64_t mask = 0;      // kMasked
  std::string text;       // original spelling for strings
  SourcePos pos;
};

bool equals(const Const& a, const Const& b);

// ---------------------------------------------------------------------------
// Expressions

enum class BinOp : uint8_t { kAdd, kSub, kMul, kDiv, kMod };

struct Expr {
  enum class Kind : uint8_t {
    kConst,
    kIdent,    // unresolved identifier straight out of the parser
    kField,    // resolved context field or built-in header field
    kMonitor,  // resolved stateful monitor reference
    kBinary,
  };
  Kind kind = Kind::kConst;
  Const value;             // kConst
  std::string name;        // kIdent/kField/kMonitor
  BinOp op = BinOp::kAdd;  // kBinary
  std::shared_ptr<Expr> lhs, rhs;
  SourcePos pos;
};

using ExprPtr = std::shared_ptr<Expr>;

ExprPtr clone(const ExprPtr& e);
bool equals(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Predicates

enum class CmpOp : uint8_t { kEq, kNe, kLt, kLe, kGt, kGe };

const char* cmp_op_text(CmpOp op);

struct Pred {
  enum class Kind : uint8_t { kCompare, kMember, kAnd, kOr, kNot };
  Kind kind = Kind::kCompare;
  // kCompare
  ExprPtr lhs, rhs;
  CmpOp cmp = CmpOp::kEq;
  // kMember: `field in list`, optionally negated. `anonymous` marks an
  // inline prefix(...) list that pretty-prints back inline.
  std::string field;
  std::string list;
  bool negated = false;
  bool anonymous = false;
  // kAnd/kOr/kNot
  std::shared_ptr<Pred> a, b;
  SourcePos pos;
};

using PredPtr = std::shared_ptr<Pred>;

PredPtr clone(const PredPtr& p);
bool equals(const Pred& a, const Pred& b);
bool equals(const PredPtr& a, const PredPtr& b);

// ---------------------------------------------------------------------------
// Declarations

struct ContextFieldDecl {
  std::string name;
  uint32_t width = 32;  // bits, [1, 64]
  bool is_signed = false;
  // Declared inside `context group { ... }`; grouped fields share one
  // generated header. Empty for standalone fields.
  std::string group;
  SourcePos pos;
};

struct ConstList {
  std::string name;
  std::vector<Const> items;
  bool anonymous = false;  // inline prefix(...) list; name is content-derived
  SourcePos pos;
};

struct ScalarDef {
  std::string name;
  Const value;
  SourcePos pos;
};

// Default monitor window: 10 simulated seconds.
inline constexpr uint64_t kDefaultMonitorWindowNs = 10'000'000'000ull;

struct MonitorDecl {
  std::string id;
  PredPtr pred;
  uint64_t window_ns = kDefaultMonitorWindowNs;
  bool window_explicit = false;
  SourcePos pos;
};

// ---------------------------------------------------------------------------
// Actions and statements

enum class ActionKind : uint8_t { kDrop, kFwd, kFlood, kLog };

struct Action {
  ActionKind kind = ActionKind::kDrop;
  std::string port;  // kFwd only; symbolic, resolved by the simulator port map
  SourcePos pos;
};

bool equals(const Action& a, const Action& b);
std::string to_string(const Action& a);

struct Stmt {
  enum class Kind : uint8_t { kAction, kIf, kPar };
  Kind kind = Kind::kAction;
  Action action;                  // kAction
  PredPtr cond;                   // kIf
  std::unique_ptr<Stmt> then_s;   // kIf
  std::unique_ptr<Stmt> else_s;   // kIf, may be null (fall through)
  std::vector<Stmt> par;          // kPar, flattened
  SourcePos pos;
};

Stmt clone(const Stmt& s);
bool equals(const Stmt& a, const Stmt& b);

// ---------------------------------------------------------------------------
// Policy

// One policy program. `body` is the parallel composition of statements in
// textual order; evaluation takes the first terminal action.
struct PolicyAst {
  std::vector<ContextFieldDecl> context_decls;  // explicit `context` decls only
  std::vector<ConstList> lists;
  std::vector<ScalarDef> scalar_defs;
  std::vector<MonitorDecl> monitors;
  std::vector<Stmt> body;
};

PolicyAst clone(const PolicyAst& p);
bool equals(const PolicyAst& a, const PolicyAst& b);

// ---------------------------------------------------------------------------
// Validation result

// Built-in header fields (from standard headers, never context headers).
bool is_builtin_field(const std::string& name);
uint32_t builtin_field_width(const std::string& name);

struct FieldInfo {
  std::string name;
  uint32_t width = 32;
  bool is_signed = false;
  bool builtin = false;
  std::string group;   // header group, empty for standalone fields
  uint32_t order = 0;  // first-use order among non-builtin fields
};

// A validated policy: all identifiers resolved, constants range-checked,
// strings interned, context fields ordered by first use.
struct ValidatedPolicy {
  PolicyAst ast;
  std::vector<FieldInfo> fields;             // context fields, first-use order
  std::vector<FieldInfo> builtins_used;      // built-ins referenced by the policy
  std::map<std::string, size_t> field_index; // name -> index into fields
  std::vector<std::string> string_table;     // interned id = index + 1
  std::vector<std::string> ports;            // fwd() targets, first-use order

  const FieldInfo* find_field(const std::string& name) const;
  const ConstList* find_list(const std::string& name) const;
  const MonitorDecl* find_monitor(const std::string& name) const;
  std::optional<uint32_t> intern_id(const std::string& s) const;
};

}  // namespace poise

#endif  // POISE_AST_HPP_

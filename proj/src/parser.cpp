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
// Recursive-descent parser for the Poise grammar (docs/grammar.md).
// Predicates and expressions share the '(' prefix, so predicate atoms are
// parsed with bounded backtracking over the token vector.

#include "poise/parser.hpp"

#include <sstream>

#include "poise/crc16.hpp"
#include "poise/lexer.hpp"

namespace poise {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<PolicyAst> parse_programs() {
    std::vector<PolicyAst> out;
    // Leading separators are tolerated.
    while (at(Tok::kSeparator)) next();
    out.push_back(parse_policy());
    while (at(Tok::kSeparator)) {
      while (at(Tok::kSeparator)) next();
      if (at(Tok::kEof)) break;
      out.push_back(parse_policy());
    }
    expect(Tok::kEof, "end of input");
    return out;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(const char* word) const {
    return cur().kind == Tok::kIdent && cur().text == word;
  }
  const Token& next() { return toks_[i_++]; }
  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().pos, msg);
  }

  bool is_action_start() const {
    return at_ident("drop") || at_ident("fwd") || at_ident("flood") || at_ident("log");
  }
  bool is_stmt_start() const {
    if (is_action_start() || at_ident("if")) return true;
    // '(' introduces parallel composition only when a statement follows.
    if (at(Tok::kLParen)) {
      const Token& t = toks_[i_ + 1];
      return t.kind == Tok::kIdent &&
             (t.text == "drop" || t.text == "fwd" || t.text == "flood" ||
              t.text == "log" || t.text == "if");
    }
    return false;
  }

  // ---- policy ----

  PolicyAst parse_policy() {
    PolicyAst p;
    anon_lists_.clear();
    while (!at(Tok::kEof) && !at(Tok::kSeparator)) {
      if (at_ident("def")) {
        parse_def(p);
      } else if (at_ident("context")) {
        parse_context_decl(p);
      } else if (is_stmt_start()) {
        p.body.push_back(parse_stmt());
      } else if (at(Tok::kIdent) && toks_[i_ + 1].kind == Tok::kAssign) {
        parse_monitor(p);
      } else {
        fail("expected declaration or statement");
      }
    }
    if (p.body.empty()) fail("policy has no body statement");
    for (auto& l : anon_lists_) p.lists.push_back(std::move(l));
    anon_lists_.clear();
    return p;
  }

  void parse_context_decl(PolicyAst& p) {
    SourcePos pos = cur().pos;
    next();  // context
    if (!at(Tok::kIdent)) fail("expected field or group name");
    std::string name = next().text;
    if (at(Tok::kLBrace)) {
      // context group { f1 : w [signed], f2, ... } — fields share one header.
      next();
      while (true) {
        if (!at(Tok::kIdent)) fail("expected field name");
        ContextFieldDecl d;
        d.name = next().text;
        d.group = name;
        d.pos = pos;
        parse_field_shape(d);
        p.context_decls.push_back(std::move(d));
        if (at(Tok::kComma)) {
          next();
          continue;
        }
        break;
      }
      expect(Tok::kRBrace, "}");
      return;
    }
    ContextFieldDecl d;
    d.name = std::move(name);
    d.pos = pos;
    parse_field_shape(d);
    p.context_decls.push_back(std::move(d));
  }

  void parse_field_shape(ContextFieldDecl& d) {
    if (at(Tok::kColon)) {
      next();
      if (!at(Tok::kInt)) fail("expected bit width");
      d.width = static_cast<uint32_t>(next().value);
    }
    if (at_ident("signed")) {
      next();
      d.is_signed = true;
    }
  }

  void parse_def(PolicyAst& p) {
    SourcePos pos = cur().pos;
    next();  // def
    if (!at(Tok::kIdent)) fail("expected name after def");
    std::string name = next().text;
    expect(Tok::kAssign, "=");
    if (at(Tok::kLBracket)) {
      ConstList l;
      l.name = name;
      l.pos = pos;
      l.items = parse_list_items();
      p.lists.push_back(std::move(l));
    } else {
      ScalarDef d;
      d.name = name;
      d.pos = pos;
      d.value = parse_const_item(/*allow_prefix=*/false);
      p.scalar_defs.push_back(std::move(d));
    }
  }

  std::vector<Const> parse_list_items() {
    expect(Tok::kLBracket, "[");
    std::vector<Const> items;
    if (!at(Tok::kRBracket)) {
      items.push_back(parse_const_item(true));
      while (at(Tok::kComma)) {
        next();
        items.push_back(parse_const_item(true));
      }
    }
    expect(Tok::kRBracket, "]");
    return items;
  }

  Const parse_const_item(bool allow_prefix) {
    Const c;
    c.pos = cur().pos;
    if (at(Tok::kInt)) {
      c.kind = ConstKind::kInt;
      c.value = next().value;
    } else if (at(Tok::kIp)) {
      c.kind = ConstKind::kIp;
      c.value = next().value;
      if (allow_prefix && at(Tok::kSlash)) {
        next();
        if (!at(Tok::kInt)) fail("expected prefix length");
        uint64_t len = next().value;
        if (len > 32) fail("prefix length > 32");
        c.kind = ConstKind::kPrefix;
        c.prefix_len = static_cast<uint8_t>(len);
      }
    } else if (at(Tok::kString)) {
      c.kind = ConstKind::kString;
      c.text = next().text;
    } else if (allow_prefix && at_ident("mask")) {
      next();
      expect(Tok::kLParen, "(");
      if (!at(Tok::kInt)) fail("expected mask value");
      c.kind = ConstKind::kMasked;
      c.value = next().value;
      expect(Tok::kComma, ",");
      if (!at(Tok::kInt)) fail("expected mask bits");
      c.mask = next().value;
      expect(Tok::kRParen, ")");
    } else {
      fail("expected constant");
    }
    return c;
  }

  void parse_monitor(PolicyAst& p) {
    MonitorDecl m;
    m.pos = cur().pos;
    m.id = next().text;
    expect(Tok::kAssign, "=");
    if (!at_ident("count")) fail("expected count(...)");
    next();
    expect(Tok::kLParen, "(");
    m.pred = parse_pred();
    expect(Tok::kRParen, ")");
    if (at_ident("window")) {
      next();
      if (!at(Tok::kInt)) fail("expected window seconds");
      uint64_t secs = next().value;
      m.window_ns = secs * 1'000'000'000ull;
      m.window_explicit = true;
    }
    p.monitors.push_back(std::move(m));
  }

  // ---- statements ----

  Stmt parse_stmt() {
    SourcePos pos = cur().pos;
    if (at_ident("if")) {
      next();
      Stmt s;
      s.kind = Stmt::Kind::kIf;
      s.pos = pos;
      s.cond = parse_pred();
      if (!at_ident("then")) fail("expected then");
      next();
      s.then_s = std::make_unique<Stmt>(parse_stmt());
      if (at_ident("else")) {
        next();
        s.else_s = std::make_unique<Stmt>(parse_stmt());
      }
      return s;
    }
    if (at(Tok::kLParen)) {
      next();
      std::vector<Stmt> par;
      par.push_back(parse_stmt());
      while (at(Tok::kPipe)) {
        next();
        par.push_back(parse_stmt());
      }
      expect(Tok::kRParen, ")");
      if (par.size() == 1) return std::move(par.front());
      Stmt s;
      s.kind = Stmt::Kind::kPar;
      s.pos = pos;
      // Nested parallel compositions flatten so composition is associative.
      for (auto& sub : par) {
        if (sub.kind == Stmt::Kind::kPar) {
          for (auto& inner : sub.par) s.par.push_back(std::move(inner));
        } else {
          s.par.push_back(std::move(sub));
        }
      }
      return s;
    }
    return parse_action_stmt();
  }

  Stmt parse_action_stmt() {
    Stmt s;
    s.kind = Stmt::Kind::kAction;
    s.pos = cur().pos;
    s.action = parse_action();
    return s;
  }

  Action parse_action() {
    Action a;
    a.pos = cur().pos;
    if (at_ident("drop")) {
      next();
      a.kind = ActionKind::kDrop;
    } else if (at_ident("flood")) {
      next();
      a.kind = ActionKind::kFlood;
    } else if (at_ident("log")) {
      next();
      a.kind = ActionKind::kLog;
    } else if (at_ident("fwd")) {
      next();
      a.kind = ActionKind::kFwd;
      expect(Tok::kLParen, "(");
      if (!at(Tok::kIdent)) fail("expected port name");
      a.port = next().text;
      expect(Tok::kRParen, ")");
    } else {
      fail("expected action");
    }
    return a;
  }

  // ---- predicates ----

  PredPtr parse_pred() {
    PredPtr p = parse_pred_and();
    while (at(Tok::kPipe)) {
      SourcePos pos = next().pos;
      auto q = std::make_shared<Pred>();
      q->kind = Pred::Kind::kOr;
      q->pos = pos;
      q->a = std::move(p);
      q->b = parse_pred_and();
      p = std::move(q);
    }
    return p;
  }

  PredPtr parse_pred_and() {
    PredPtr p = parse_pred_unit();
    while (at(Tok::kAmp)) {
      SourcePos pos = next().pos;
      auto q = std::make_shared<Pred>();
      q->kind = Pred::Kind::kAnd;
      q->pos = pos;
      q->a = std::move(p);
      q->b = parse_pred_unit();
      p = std::move(q);
    }
    return p;
  }

  PredPtr parse_pred_unit() {
    SourcePos pos = cur().pos;
    if (at(Tok::kBang)) {
      next();
      PredPtr inner = parse_pred_unit();
      if (inner->kind == Pred::Kind::kMember) {
        inner->negated = !inner->negated;
        return inner;
      }
      auto p = std::make_shared<Pred>();
      p->kind = Pred::Kind::kNot;
      p->pos = pos;
      p->a = std::move(inner);
      return p;
    }
    if (at_ident("match")) {
      next();
      expect(Tok::kLParen, "(");
      PredPtr p = parse_pred();
      expect(Tok::kRParen, ")");
      return p;
    }
    if (at(Tok::kLParen)) {
      // Either a grouped predicate or a parenthesized expression. Try the
      // predicate reading first and backtrack on failure.
      size_t mark = i_;
      try {
        next();
        PredPtr p = parse_pred();
        expect(Tok::kRParen, ")");
        return p;
      } catch (const ParseError&) {
        i_ = mark;
      }
    }
    return parse_pred_atom();
  }

  PredPtr parse_pred_atom() {
    SourcePos pos = cur().pos;
    ExprPtr lhs = parse_expr();
    if (at_ident("in")) {
      next();
      if (lhs->kind != Expr::Kind::kIdent)
        throw ParseError(pos, "membership needs a bare field on the left of 'in'");
      auto p = std::make_shared<Pred>();
      p->kind = Pred::Kind::kMember;
      p->pos = pos;
      p->field = lhs->name;
      if (at(Tok::kIdent) && cur().text == "prefix") {
        next();
        p->list = register_anon_prefix_list(pos);
        p->anonymous = true;
      } else if (at(Tok::kIdent)) {
        p->list = next().text;
      } else {
        fail("expected list name");
      }
      return p;
    }
    CmpOp op;
    switch (cur().kind) {
      case Tok::kEq: op = CmpOp::kEq; break;
      case Tok::kNe: op = CmpOp::kNe; break;
      case Tok::kLt: op = CmpOp::kLt; break;
      case Tok::kLe: op = CmpOp::kLe; break;
      case Tok::kGt: op = CmpOp::kGt; break;
      case Tok::kGe: op = CmpOp::kGe; break;
      default: fail("expected comparison or 'in'");
    }
    next();
    auto p = std::make_shared<Pred>();
    p->kind = Pred::Kind::kCompare;
    p->pos = pos;
    p->lhs = std::move(lhs);
    p->cmp = op;
    p->rhs = parse_expr();
    return p;
  }

  // ---- expressions ----

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (at(Tok::kPlus) || at(Tok::kMinus)) {
      BinOp op = at(Tok::kPlus) ? BinOp::kAdd : BinOp::kSub;
      SourcePos pos = next().pos;
      auto n = std::make_shared<Expr>();
      n->kind = Expr::Kind::kBinary;
      n->op = op;
      n->pos = pos;
      n->lhs = std::move(e);
      n->rhs = parse_term();
      e = std::move(n);
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_expr_atom();
    while (at(Tok::kStar) || at(Tok::kSlash) || at(Tok::kPercent)) {
      BinOp op = at(Tok::kStar)    ? BinOp::kMul
                 : at(Tok::kSlash) ? BinOp::kDiv
                                   : BinOp::kMod;
      SourcePos pos = next().pos;
      auto n = std::make_shared<Expr>();
      n->kind = Expr::Kind::kBinary;
      n->op = op;
      n->pos = pos;
      n->lhs = std::move(e);
      n->rhs = parse_expr_atom();
      e = std::move(n);
    }
    return e;
  }

  ExprPtr parse_expr_atom() {
    SourcePos pos = cur().pos;
    if (at(Tok::kLParen)) {
      next();
      ExprPtr e = parse_expr();
      expect(Tok::kRParen, ")");
      return e;
    }
    auto e = std::make_shared<Expr>();
    e->pos = pos;
    if (at(Tok::kInt) || at(Tok::kIp)) {
      e->kind = Expr::Kind::kConst;
      e->value.kind = at(Tok::kInt) ? ConstKind::kInt : ConstKind::kIp;
      e->value.pos = pos;
      e->value.value = next().value;
      return e;
    }
    if (at(Tok::kString)) {
      e->kind = Expr::Kind::kConst;
      e->value.kind = ConstKind::kString;
      e->value.pos = pos;
      e->value.text = next().text;
      return e;
    }
    if (at(Tok::kIdent)) {
      e->kind = Expr::Kind::kIdent;
      e->name = next().text;
      return e;
    }
    fail("expected expression");
  }

  // Inline `h in prefix(a.b.c.d/len, ...)`. The anonymous list's name is
  // derived from its content so identical inline lists dedupe on compose.
  std::string register_anon_prefix_list(SourcePos pos) {
    expect(Tok::kLParen, "(");
    ConstList l;
    l.anonymous = true;
    l.pos = pos;
    l.items.push_back(parse_const_item(true));
    while (at(Tok::kComma)) {
      next();
      l.items.push_back(parse_const_item(true));
    }
    expect(Tok::kRParen, ")");
    std::string blob;
    for (const auto& it : l.items) {
      blob += std::to_string(static_cast<int>(it.kind)) + ":" +
              std::to_string(it.value) + "/" + std::to_string(it.prefix_len) + ";";
    }
    std::ostringstream name;
    name << "$prefix_" << std::hex
         << crc16_ccitt(reinterpret_cast<const uint8_t*>(blob.data()), blob.size());
    l.name = name.str();
    for (const auto& existing : anon_lists_)
      if (existing.name == l.name) return l.name;
    anon_lists_.push_back(std::move(l));
    return anon_lists_.back().name;
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  std::vector<ConstList> anon_lists_;
};

}  // namespace

PolicyAst parse(std::string_view source) {
  auto all = parse_file(source);
  if (all.size() != 1)
    throw ParseError({1, 1}, "expected exactly one policy (found " +
                                 std::to_string(all.size()) + ")");
  return std::move(all.front());
}

std::vector<PolicyAst> parse_file(std::string_view source) {
  Parser p(lex(source));
  return p.parse_programs();
}

}  // namespace poise

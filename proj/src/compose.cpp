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
// Structural AST helpers (clone, equality) and policy composition.

#include "poise/compose.hpp"

namespace poise {

// ---- equality ----
// Source positions are ignored; string constants compare by spelling so
// equality is stable across interning.

bool equals(const Const& a, const Const& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ConstKind::kString) return a.text == b.text;
  return a.value == b.value && a.prefix_len == b.prefix_len && a.mask == b.mask;
}

bool equals(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::kConst: return equals(a->value, b->value);
    case Expr::Kind::kIdent:
    case Expr::Kind::kField:
    case Expr::Kind::kMonitor: return a->name == b->name;
    case Expr::Kind::kBinary:
      return a->op == b->op && equals(a->lhs, b->lhs) && equals(a->rhs, b->rhs);
  }
  return false;
}

bool equals(const Pred& a, const Pred& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Pred::Kind::kCompare:
      return a.cmp == b.cmp && equals(a.lhs, b.lhs) && equals(a.rhs, b.rhs);
    case Pred::Kind::kMember:
      return a.field == b.field && a.list == b.list && a.negated == b.negated;
    case Pred::Kind::kAnd:
    case Pred::Kind::kOr:
      return equals(a.a, b.a) && equals(a.b, b.b);
    case Pred::Kind::kNot:
      return equals(a.a, b.a);
  }
  return false;
}

bool equals(const PredPtr& a, const PredPtr& b) {
  if (!a || !b) return !a && !b;
  return equals(*a, *b);
}

bool equals(const Action& a, const Action& b) {
  return a.kind == b.kind && a.port == b.port;
}

bool equals(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::kAction:
      return equals(a.action, b.action);
    case Stmt::Kind::kIf: {
      if (!equals(a.cond, b.cond)) return false;
      if (!equals(*a.then_s, *b.then_s)) return false;
      if (static_cast<bool>(a.else_s) != static_cast<bool>(b.else_s)) return false;
      return !a.else_s || equals(*a.else_s, *b.else_s);
    }
    case Stmt::Kind::kPar: {
      if (a.par.size() != b.par.size()) return false;
      for (size_t i = 0; i < a.par.size(); ++i)
        if (!equals(a.par[i], b.par[i])) return false;
      return true;
    }
  }
  return false;
}

namespace {

bool equals_decl(const ContextFieldDecl& a, const ContextFieldDecl& b) {
  return a.name == b.name && a.width == b.width && a.is_signed == b.is_signed &&
         a.group == b.group;
}

bool equals_list(const ConstList& a, const ConstList& b) {
  if (a.name != b.name || a.items.size() != b.items.size()) return false;
  for (size_t i = 0; i < a.items.size(); ++i)
    if (!equals(a.items[i], b.items[i])) return false;
  return true;
}

}  // namespace

bool equals(const PolicyAst& a, const PolicyAst& b) {
  if (a.context_decls.size() != b.context_decls.size() ||
      a.lists.size() != b.lists.size() ||
      a.scalar_defs.size() != b.scalar_defs.size() ||
      a.monitors.size() != b.monitors.size() || a.body.size() != b.body.size())
    return false;
  for (size_t i = 0; i < a.context_decls.size(); ++i)
    if (!equals_decl(a.context_decls[i], b.context_decls[i])) return false;
  for (size_t i = 0; i < a.lists.size(); ++i)
    if (!equals_list(a.lists[i], b.lists[i])) return false;
  for (size_t i = 0; i < a.scalar_defs.size(); ++i)
    if (a.scalar_defs[i].name != b.scalar_defs[i].name ||
        !equals(a.scalar_defs[i].value, b.scalar_defs[i].value))
      return false;
  for (size_t i = 0; i < a.monitors.size(); ++i)
    if (a.monitors[i].id != b.monitors[i].id ||
        a.monitors[i].window_ns != b.monitors[i].window_ns ||
        !equals(a.monitors[i].pred, b.monitors[i].pred))
      return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!equals(a.body[i], b.body[i])) return false;
  return true;
}

// ---- clone ----

ExprPtr clone(const ExprPtr& e) {
  if (!e) return nullptr;
  auto n = std::make_shared<Expr>(*e);
  n->lhs = clone(e->lhs);
  n->rhs = clone(e->rhs);
  return n;
}

PredPtr clone(const PredPtr& p) {
  if (!p) return nullptr;
  auto n = std::make_shared<Pred>(*p);
  n->lhs = clone(p->lhs);
  n->rhs = clone(p->rhs);
  n->a = clone(p->a);
  n->b = clone(p->b);
  return n;
}

Stmt clone(const Stmt& s) {
  Stmt n;
  n.kind = s.kind;
  n.pos = s.pos;
  n.action = s.action;
  n.cond = clone(s.cond);
  if (s.then_s) n.then_s = std::make_unique<Stmt>(clone(*s.then_s));
  if (s.else_s) n.else_s = std::make_unique<Stmt>(clone(*s.else_s));
  n.par.reserve(s.par.size());
  for (const auto& sub : s.par) n.par.push_back(clone(sub));
  return n;
}

PolicyAst clone(const PolicyAst& p) {
  PolicyAst n;
  n.context_decls = p.context_decls;
  n.lists = p.lists;
  n.scalar_defs = p.scalar_defs;
  for (const auto& m : p.monitors) {
    MonitorDecl md = m;
    md.pred = clone(m.pred);
    n.monitors.push_back(std::move(md));
  }
  n.body.reserve(p.body.size());
  for (const auto& s : p.body) n.body.push_back(clone(s));
  return n;
}

// ---- composition ----

PolicyAst compose(const std::vector<PolicyAst>& policies) {
  PolicyAst out;
  for (const auto& p : policies) {
    for (const auto& d : p.context_decls) {
      bool merged = false;
      for (const auto& existing : out.context_decls) {
        if (existing.name != d.name) continue;
        if (!equals_decl(existing, d))
          throw ValidateError(d.pos, "composition: field '" + d.name +
                                         "' declared with a different shape");
        merged = true;
        break;
      }
      if (!merged) out.context_decls.push_back(d);
    }
    for (const auto& l : p.lists) {
      bool merged = false;
      for (const auto& existing : out.lists) {
        if (existing.name != l.name) continue;
        if (!equals_list(existing, l))
          throw ValidateError(l.pos, "composition: list '" + l.name +
                                         "' declared with different items");
        merged = true;
        break;
      }
      if (!merged) out.lists.push_back(l);
    }
    for (const auto& d : p.scalar_defs) {
      bool merged = false;
      for (const auto& existing : out.scalar_defs) {
        if (existing.name != d.name) continue;
        if (!equals(existing.value, d.value))
          throw ValidateError(d.pos, "composition: constant '" + d.name +
                                         "' defined with a different value");
        merged = true;
        break;
      }
      if (!merged) out.scalar_defs.push_back(d);
    }
    for (const auto& m : p.monitors) {
      bool merged = false;
      for (const auto& existing : out.monitors) {
        if (existing.id != m.id) continue;
        if (existing.window_ns != m.window_ns || !equals(existing.pred, m.pred))
          throw ValidateError(m.pos, "composition: monitor '" + m.id +
                                         "' declared with a different definition");
        merged = true;
        break;
      }
      if (!merged) {
        MonitorDecl md = m;
        md.pred = clone(m.pred);
        out.monitors.push_back(std::move(md));
      }
    }
    // Bodies join in input order; a top-level parallel group stays flat so
    // composition is associative.
    for (const auto& s : p.body) {
      if (s.kind == Stmt::Kind::kPar) {
        for (const auto& sub : s.par) out.body.push_back(clone(sub));
      } else {
        out.body.push_back(clone(s));
      }
    }
  }
  return out;
}

}  // namespace poise

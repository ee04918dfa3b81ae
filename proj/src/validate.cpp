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

#include "poise/validate.hpp"

#include <algorithm>
#include <set>

namespace poise {

namespace {

struct BuiltinField {
  const char* name;
  uint32_t width;
};

// From standard headers, never context headers. dport is deliberately not a
// match dimension anywhere in the primitive, so it is not exposed either.
constexpr BuiltinField kBuiltins[] = {
    {"sip", 32}, {"dip", 32}, {"sport", 16}, {"proto", 8}};

class Validator {
 public:
  explicit Validator(PolicyAst ast) { out_.ast = std::move(ast); }

  ValidatedPolicy run() {
    collect_decls();
    // Resolution order defines first-use order for fields and interning.
    for (auto& m : out_.ast.monitors) {
      in_monitor_pred_ = true;
      resolve_pred(m.pred);
      in_monitor_pred_ = false;
      if (m.window_ns == 0)
        throw ValidateError(m.pos, "monitor window must be positive");
    }
    for (auto& s : out_.ast.body) resolve_stmt(s);
    return std::move(out_);
  }

 private:
  void collect_decls() {
    std::set<std::string> names;
    auto declare = [&](const std::string& n, SourcePos pos) {
      if (is_builtin_field(n))
        throw ValidateError(pos, "'" + n + "' is a built-in header field");
      if (!names.insert(n).second)
        throw ValidateError(pos, "duplicate declaration: " + n);
    };

    for (const auto& d : out_.ast.context_decls) {
      declare(d.name, d.pos);
      if (d.width < 1 || d.width > 64)
        throw ValidateError(d.pos, "field width must be in [1, 64]");
      add_field(d.name, d.width, d.is_signed, d.group);
    }
    for (auto& l : out_.ast.lists) {
      declare(l.name, l.pos);
      if (l.items.empty())
        throw ValidateError(l.pos, "constant list must be non-empty");
      check_list_kinds(l);
      for (auto& it : l.items) intern_const(it);
    }
    for (auto& d : out_.ast.scalar_defs) {
      declare(d.name, d.pos);
      intern_const(d.value);
    }
    for (const auto& m : out_.ast.monitors) declare(m.id, m.pos);
  }

  static void check_list_kinds(const ConstList& l) {
    auto base = [](ConstKind k) {
      // Plain IPs and prefixes may mix in one list; the table match kind is
      // picked from the key shapes later.
      if (k == ConstKind::kIp || k == ConstKind::kPrefix) return ConstKind::kIp;
      return k;
    };
    ConstKind k0 = base(l.items.front().kind);
    for (const auto& it : l.items)
      if (base(it.kind) != k0)
        throw ValidateError(it.pos, "list items must share one kind");
    // Duplicates rejected.
    for (size_t i = 0; i < l.items.size(); ++i)
      for (size_t j = i + 1; j < l.items.size(); ++j)
        if (equals(l.items[i], l.items[j]))
          throw ValidateError(l.items[j].pos, "duplicate list item");
  }

  void add_field(const std::string& name, uint32_t width, bool is_signed,
                 const std::string& group = {}) {
    if (out_.field_index.count(name)) return;
    FieldInfo f;
    f.name = name;
    f.width = width;
    f.is_signed = is_signed;
    f.builtin = false;
    f.group = group;
    f.order = static_cast<uint32_t>(out_.fields.size());
    out_.field_index[name] = out_.fields.size();
    out_.fields.push_back(f);
  }

  void intern_const(Const& c) {
    if (c.kind != ConstKind::kString) return;
    for (size_t i = 0; i < out_.string_table.size(); ++i) {
      if (out_.string_table[i] == c.text) {
        c.value = static_cast<uint32_t>(i + 1);
        return;
      }
    }
    out_.string_table.push_back(c.text);
    c.value = static_cast<uint32_t>(out_.string_table.size());
  }

  const FieldInfo& touch_field(const std::string& name, SourcePos pos) {
    if (is_builtin_field(name)) {
      for (auto& b : out_.builtins_used)
        if (b.name == name) return b;
      FieldInfo f;
      f.name = name;
      f.width = builtin_field_width(name);
      f.builtin = true;
      out_.builtins_used.push_back(f);
      return out_.builtins_used.back();
    }
    auto it = out_.field_index.find(name);
    if (it == out_.field_index.end()) {
      // Implicit declaration at first use, default 32-bit unsigned.
      (void)pos;
      add_field(name, 32, false);
      it = out_.field_index.find(name);
    }
    return out_.fields[it->second];
  }

  bool is_scalar_def(const std::string& n) const {
    for (const auto& d : out_.ast.scalar_defs)
      if (d.name == n) return true;
    return false;
  }
  const Const& scalar_value(const std::string& n) const {
    for (const auto& d : out_.ast.scalar_defs)
      if (d.name == n) return d.value;
    throw std::logic_error("scalar_value");
  }
  bool is_monitor(const std::string& n) const {
    for (const auto& m : out_.ast.monitors)
      if (m.id == n) return true;
    return false;
  }
  const ConstList* find_list(const std::string& n) const {
    for (const auto& l : out_.ast.lists)
      if (l.name == n) return &l;
    return nullptr;
  }

  void resolve_expr(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::kConst:
        intern_const(e->value);
        if (e->value.kind == ConstKind::kInt && e->value.value > 0xFFFFFFFFull)
          throw ValidateError(e->pos, "constant exceeds 32-bit ALU word");
        break;
      case Expr::Kind::kIdent: {
        const std::string n = e->name;
        if (is_scalar_def(n)) {
          e->kind = Expr::Kind::kConst;
          e->value = scalar_value(n);
        } else if (is_monitor(n)) {
          if (in_monitor_pred_)
            throw ValidateError(e->pos, "monitors cannot reference monitors");
          e->kind = Expr::Kind::kMonitor;
        } else {
          touch_field(n, e->pos);
          e->kind = Expr::Kind::kField;
        }
        break;
      }
      case Expr::Kind::kBinary:
        resolve_expr(e->lhs);
        resolve_expr(e->rhs);
        break;
      case Expr::Kind::kField:
      case Expr::Kind::kMonitor:
        break;
    }
  }

  // Constant must fit the declared width of the field it is compared with.
  void check_const_fits(const Const& c, const FieldInfo& f, SourcePos pos) {
    if (c.kind == ConstKind::kString) return;  // interned ids are 32-bit
    uint32_t w = f.width;
    if (w >= 64) return;
    if (f.is_signed) {
      uint64_t lim = 1ull << (w - 1);
      if (c.value >= lim)
        throw ValidateError(pos, "constant overflow: " + std::to_string(c.value) +
                                     " does not fit signed " + std::to_string(w) +
                                     "-bit field " + f.name);
    } else {
      uint64_t lim = (w == 64) ? ~0ull : ((1ull << w) - 1);
      if (c.value > lim)
        throw ValidateError(pos, "constant overflow: " + std::to_string(c.value) +
                                     " does not fit " + std::to_string(w) +
                                     "-bit field " + f.name);
    }
  }

  void resolve_pred(const PredPtr& p) {
    switch (p->kind) {
      case Pred::Kind::kCompare: {
        resolve_expr(p->lhs);
        resolve_expr(p->rhs);
        // Bare-field vs constant comparisons get width checks.
        if (p->lhs->kind == Expr::Kind::kField && p->rhs->kind == Expr::Kind::kConst)
          check_const_fits(p->rhs->value, touch_field(p->lhs->name, p->lhs->pos), p->pos);
        if (p->rhs->kind == Expr::Kind::kField && p->lhs->kind == Expr::Kind::kConst)
          check_const_fits(p->lhs->value, touch_field(p->rhs->name, p->rhs->pos), p->pos);
        break;
      }
      case Pred::Kind::kMember: {
        const FieldInfo& f = touch_field(p->field, p->pos);
        const ConstList* l = find_list(p->list);
        if (l == nullptr)
          throw ValidateError(p->pos, "undeclared identifier: " + p->list);
        for (const auto& it : l->items)
          if (it.kind == ConstKind::kInt) check_const_fits(it, f, p->pos);
        break;
      }
      case Pred::Kind::kAnd:
      case Pred::Kind::kOr:
        resolve_pred(p->a);
        resolve_pred(p->b);
        break;
      case Pred::Kind::kNot:
        resolve_pred(p->a);
        break;
    }
  }

  void resolve_stmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::kAction:
        if (s.action.kind == ActionKind::kFwd) {
          if (std::find(out_.ports.begin(), out_.ports.end(), s.action.port) ==
              out_.ports.end())
            out_.ports.push_back(s.action.port);
        }
        break;
      case Stmt::Kind::kIf:
        resolve_pred(s.cond);
        resolve_stmt(*s.then_s);
        if (s.else_s) resolve_stmt(*s.else_s);
        break;
      case Stmt::Kind::kPar:
        for (auto& sub : s.par) resolve_stmt(sub);
        break;
    }
  }

  ValidatedPolicy out_;
  bool in_monitor_pred_ = false;
};

}  // namespace

bool is_builtin_field(const std::string& name) {
  for (const auto& b : kBuiltins)
    if (name == b.name) return true;
  return false;
}

uint32_t builtin_field_width(const std::string& name) {
  for (const auto& b : kBuiltins)
    if (name == b.name) return b.width;
  return 32;
}

const FieldInfo* ValidatedPolicy::find_field(const std::string& name) const {
  auto it = field_index.find(name);
  if (it != field_index.end()) return &fields[it->second];
  for (const auto& b : builtins_used)
    if (b.name == name) return &b;
  return nullptr;
}

const ConstList* ValidatedPolicy::find_list(const std::string& name) const {
  for (const auto& l : ast.lists)
    if (l.name == name) return &l;
  return nullptr;
}

const MonitorDecl* ValidatedPolicy::find_monitor(const std::string& name) const {
  for (const auto& m : ast.monitors)
    if (m.id == name) return &m;
  return nullptr;
}

std::optional<uint32_t> ValidatedPolicy::intern_id(const std::string& s) const {
  for (size_t i = 0; i < string_table.size(); ++i)
    if (string_table[i] == s) return static_cast<uint32_t>(i + 1);
  return std::nullopt;
}

ValidatedPolicy validate(PolicyAst ast) { return Validator(std::move(ast)).run(); }

}  // namespace poise

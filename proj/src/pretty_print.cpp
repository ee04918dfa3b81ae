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

#include "poise/pretty_print.hpp"

#include <sstream>

namespace poise {

namespace {

std::string ip_to_string(uint64_t v) {
  std::ostringstream os;
  os << ((v >> 24) & 0xFF) << '.' << ((v >> 16) & 0xFF) << '.' << ((v >> 8) & 0xFF)
     << '.' << (v & 0xFF);
  return os.str();
}

int precedence(BinOp op) {
  switch (op) {
    case BinOp::kAdd:
    case BinOp::kSub: return 1;
    case BinOp::kMul:
    case BinOp::kDiv:
    case BinOp::kMod: return 2;
  }
  return 0;
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::kAdd: return "+";
    case BinOp::kSub: return "-";
    case BinOp::kMul: return "*";
    case BinOp::kDiv: return "/";
    case BinOp::kMod: return "%";
  }
  return "?";
}

void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  switch (e->kind) {
    case Expr::Kind::kConst:
      os << to_string(e->value);
      return;
    case Expr::Kind::kIdent:
    case Expr::Kind::kField:
    case Expr::Kind::kMonitor:
      os << e->name;
      return;
    case Expr::Kind::kBinary: {
      int prec = precedence(e->op);
      bool parens = prec < parent_prec;
      if (parens) os << '(';
      print_expr(os, e->lhs, prec);
      os << op_text(e->op);
      // Right operand needs parens at equal precedence to keep left
      // associativity on reparse (a-b-c vs a-(b-c)).
      print_expr(os, e->rhs, prec + 1);
      if (parens) os << ')';
      return;
    }
  }
}

const ConstList* lookup_list(const PolicyAst* ast, const std::string& name) {
  if (ast == nullptr) return nullptr;
  for (const auto& l : ast->lists)
    if (l.name == name) return &l;
  return nullptr;
}

void print_pred(std::ostream& os, const Pred& p, const PolicyAst* ast,
                bool parens_needed) {
  switch (p.kind) {
    case Pred::Kind::kCompare:
      print_expr(os, p.lhs, 0);
      os << cmp_op_text(p.cmp);
      print_expr(os, p.rhs, 0);
      return;
    case Pred::Kind::kMember: {
      if (p.negated) os << '!';
      os << p.field << " in ";
      if (p.anonymous) {
        const ConstList* l = lookup_list(ast, p.list);
        os << "prefix(";
        if (l != nullptr) {
          for (size_t i = 0; i < l->items.size(); ++i) {
            if (i) os << ", ";
            os << to_string(l->items[i]);
          }
        }
        os << ')';
      } else {
        os << p.list;
      }
      return;
    }
    case Pred::Kind::kAnd:
    case Pred::Kind::kOr: {
      if (parens_needed) os << '(';
      print_pred(os, *p.a, ast, true);
      os << (p.kind == Pred::Kind::kAnd ? " & " : " | ");
      print_pred(os, *p.b, ast, true);
      if (parens_needed) os << ')';
      return;
    }
    case Pred::Kind::kNot:
      os << "!(";
      print_pred(os, *p.a, ast, false);
      os << ')';
      return;
  }
}

void print_stmt(std::ostream& os, const Stmt& s, const PolicyAst* ast) {
  switch (s.kind) {
    case Stmt::Kind::kAction:
      os << to_string(s.action);
      return;
    case Stmt::Kind::kIf:
      os << "if ";
      print_pred(os, *s.cond, ast, false);
      os << " then ";
      print_stmt(os, *s.then_s, ast);
      if (s.else_s) {
        os << " else ";
        print_stmt(os, *s.else_s, ast);
      }
      return;
    case Stmt::Kind::kPar: {
      os << '(';
      for (size_t i = 0; i < s.par.size(); ++i) {
        if (i) os << " | ";
        print_stmt(os, s.par[i], ast);
      }
      os << ')';
      return;
    }
  }
}

}  // namespace

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "==";
    case CmpOp::kNe: return "!=";
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
  }
  return "?";
}

std::string to_string(const Const& c) {
  switch (c.kind) {
    case ConstKind::kInt: return std::to_string(c.value);
    case ConstKind::kIp: return ip_to_string(c.value);
    case ConstKind::kPrefix:
      return ip_to_string(c.value) + "/" + std::to_string(c.prefix_len);
    case ConstKind::kString: return "\"" + c.text + "\"";
    case ConstKind::kMasked:
      return "mask(" + std::to_string(c.value) + ", " + std::to_string(c.mask) + ")";
  }
  return "?";
}

std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::kDrop: return "drop";
    case ActionKind::kFwd: return "fwd(" + a.port + ")";
    case ActionKind::kFlood: return "flood";
    case ActionKind::kLog: return "log";
  }
  return "?";
}

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string to_string(const Pred& p, const PolicyAst* ast) {
  std::ostringstream os;
  print_pred(os, p, ast, false);
  return os.str();
}

std::string to_string(const PredPtr& p, const PolicyAst* ast) {
  return to_string(*p, ast);
}

std::string pretty_print(const PolicyAst& ast) {
  std::ostringstream os;
  auto print_shape = [&](const ContextFieldDecl& d) {
    os << d.name;
    if (d.width != 32 || d.is_signed) os << " : " << d.width;
    if (d.is_signed) os << " signed";
  };
  for (size_t i = 0; i < ast.context_decls.size();) {
    const auto& d = ast.context_decls[i];
    if (d.group.empty()) {
      os << "context ";
      print_shape(d);
      os << '\n';
      ++i;
      continue;
    }
    os << "context " << d.group << " { ";
    bool first = true;
    while (i < ast.context_decls.size() && ast.context_decls[i].group == d.group) {
      if (!first) os << ", ";
      print_shape(ast.context_decls[i]);
      first = false;
      ++i;
    }
    os << " }\n";
  }
  for (const auto& l : ast.lists) {
    if (l.anonymous) continue;  // printed inline at the membership site
    os << "def " << l.name << " = [";
    for (size_t i = 0; i < l.items.size(); ++i) {
      if (i) os << ", ";
      os << to_string(l.items[i]);
    }
    os << "]\n";
  }
  for (const auto& d : ast.scalar_defs)
    os << "def " << d.name << " = " << to_string(d.value) << '\n';
  for (const auto& m : ast.monitors) {
    os << m.id << " = count(" << to_string(*m.pred, &ast) << ")";
    if (m.window_ns != kDefaultMonitorWindowNs)
      os << " window " << (m.window_ns / 1'000'000'000ull);
    os << '\n';
  }
  for (const auto& s : ast.body) {
    print_stmt(os, s, &ast);
    os << '\n';
  }
  return os.str();
}

}  // namespace poise

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
// Conservative conflict detection over composed policies: every pair of
// branches with different terminal actions is checked for a satisfiable
// predicate intersection under an interval abstraction per numeric variable
// and a set abstraction per membership list. The check may report conflicts
// that are only satisfiable in the abstraction; it never misses a concrete
// overlap on the abstracted dimensions.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "poise/compiler.hpp"
#include "poise/pretty_print.hpp"

namespace poise {

namespace {

struct Lit {
  const Pred* atom;
  bool positive;
};

struct Branch {
  std::vector<Lit> path;  // conjunction of branch conditions (non-atomic ok)
  std::vector<std::pair<const Pred*, bool>> raw;  // same, as pred+polarity
  const Action* action;
  std::string describe;
};

void collect_branches(const Stmt& s, std::vector<std::pair<const Pred*, bool>>& path,
                      std::vector<Branch>& out, const PolicyAst& ast) {
  switch (s.kind) {
    case Stmt::Kind::kAction: {
      Branch b;
      b.raw = path;
      b.action = &s.action;
      std::string desc;
      for (const auto& [p, pol] : path) {
        if (!desc.empty()) desc += " & ";
        desc += pol ? to_string(*p, &ast) : "!(" + to_string(*p, &ast) + ")";
      }
      if (desc.empty()) desc = "true";
      b.describe = desc + " => " + to_string(s.action);
      out.push_back(std::move(b));
      return;
    }
    case Stmt::Kind::kIf:
      path.emplace_back(s.cond.get(), true);
      collect_branches(*s.then_s, path, out, ast);
      path.back().second = false;
      if (s.else_s) collect_branches(*s.else_s, path, out, ast);
      path.pop_back();
      return;
    case Stmt::Kind::kPar:
      for (const auto& sub : s.par) collect_branches(sub, path, out, ast);
      return;
  }
}

// ---- satisfiability of a conjunction of predicates ----

struct VarDomain {
  int64_t lo;
  int64_t hi;
};

class TermChecker {
 public:
  explicit TermChecker(const ValidatedPolicy& vp) : vp_(vp) {}

  bool satisfiable(const std::vector<Lit>& atoms) {
    // Syntactic complement: the same atom with both polarities.
    for (size_t i = 0; i < atoms.size(); ++i)
      for (size_t j = i + 1; j < atoms.size(); ++j)
        if (atoms[i].positive != atoms[j].positive &&
            same_atom(atoms[i].atom, atoms[j].atom))
          return false;

    vars_.clear();
    for (const auto& lit : atoms)
      if (!apply(lit)) return false;

    for (auto& [name, v] : vars_) {
      if (v.lo > v.hi) return false;
      if (v.allowed) {
        bool any = false;
        for (int64_t x : *v.allowed) {
          if (x < v.lo || x > v.hi) continue;
          if (v.forbidden.count(x)) continue;
          any = true;
          break;
        }
        if (!any) return false;
      } else if (!v.forbidden.empty() &&
                 v.hi - v.lo < static_cast<int64_t>(4096)) {
        bool any = false;
        for (int64_t x = v.lo; x <= v.hi; ++x) {
          if (!v.forbidden.count(x)) {
            any = true;
            break;
          }
        }
        if (!any) return false;
      }
    }
    return true;
  }

 private:
  struct VarState {
    int64_t lo = 0;
    int64_t hi = 0;
    std::optional<std::set<int64_t>> allowed;
    std::set<int64_t> forbidden;  // excluded points and negated memberships
  };

  static bool same_atom(const Pred* a, const Pred* b) { return equals(*a, *b); }

  VarDomain domain_of(const std::string& var) const {
    const FieldInfo* f = vp_.find_field(var);
    if (f == nullptr) return {0, 0xFFFFFFFFll};  // monitor value register
    if (f->is_signed) {
      uint32_t w = std::min<uint32_t>(f->width, 32);
      int64_t half = int64_t(1) << (w - 1);
      return {-half, half - 1};
    }
    uint32_t w = std::min<uint32_t>(f->width, 32);
    uint64_t hi = (w >= 32) ? 0xFFFFFFFFull : ((1ull << w) - 1);
    return {0, static_cast<int64_t>(hi)};
  }

  VarState& var(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    VarDomain d = domain_of(name);
    VarState v;
    v.lo = d.lo;
    v.hi = d.hi;
    return vars_.emplace(name, std::move(v)).first->second;
  }

  // Returns false if the literal is already unsatisfiable.
  bool apply(const Lit& lit) {
    const Pred* p = lit.atom;
    if (p->kind == Pred::Kind::kMember) return apply_member(*p, lit.positive);
    if (p->kind == Pred::Kind::kCompare) return apply_compare(*p, lit.positive);
    return true;
  }

  bool apply_member(const Pred& p, bool positive) {
    const ConstList* l = vp_.find_list(p.list);
    if (l == nullptr) return true;
    for (const auto& it : l->items)
      if (it.kind == ConstKind::kPrefix || it.kind == ConstKind::kMasked)
        return true;  // prefix/wildcard sets: not abstracted, stay satisfiable
    bool member_of = positive != p.negated;
    VarState& v = var(p.field);
    if (member_of) {
      std::set<int64_t> items;
      for (const auto& it : l->items) items.insert(static_cast<int64_t>(it.value));
      if (v.allowed) {
        std::set<int64_t> inter;
        for (int64_t x : *v.allowed)
          if (items.count(x)) inter.insert(x);
        v.allowed = std::move(inter);
      } else {
        v.allowed = std::move(items);
      }
      if (v.allowed->empty()) return false;
    } else {
      for (const auto& it : l->items) v.forbidden.insert(static_cast<int64_t>(it.value));
    }
    return true;
  }

  bool apply_compare(const Pred& p, bool positive) {
    const Expr* field_side = nullptr;
    const Expr* const_side = nullptr;
    CmpOp cmp = p.cmp;
    bool monitor = false;
    auto bare = [](const Expr& e) {
      return e.kind == Expr::Kind::kField || e.kind == Expr::Kind::kMonitor;
    };
    if (bare(*p.lhs) && p.rhs->kind == Expr::Kind::kConst) {
      field_side = p.lhs.get();
      const_side = p.rhs.get();
    } else if (bare(*p.rhs) && p.lhs->kind == Expr::Kind::kConst) {
      field_side = p.rhs.get();
      const_side = p.lhs.get();
      switch (cmp) {
        case CmpOp::kLt: cmp = CmpOp::kGt; break;
        case CmpOp::kLe: cmp = CmpOp::kGe; break;
        case CmpOp::kGt: cmp = CmpOp::kLt; break;
        case CmpOp::kGe: cmp = CmpOp::kLe; break;
        default: break;
      }
    } else {
      return true;  // computed comparison: not abstracted
    }
    monitor = field_side->kind == Expr::Kind::kMonitor;
    (void)monitor;
    int64_t c = static_cast<int64_t>(const_side->value.value & 0xFFFFFFFFull);

    if (!positive) {
      switch (cmp) {
        case CmpOp::kEq: cmp = CmpOp::kNe; break;
        case CmpOp::kNe: cmp = CmpOp::kEq; break;
        case CmpOp::kLt: cmp = CmpOp::kGe; break;
        case CmpOp::kLe: cmp = CmpOp::kGt; break;
        case CmpOp::kGt: cmp = CmpOp::kLe; break;
        case CmpOp::kGe: cmp = CmpOp::kLt; break;
      }
    }

    VarState& v = var(field_side->name);
    switch (cmp) {
      case CmpOp::kEq:
        v.lo = std::max(v.lo, c);
        v.hi = std::min(v.hi, c);
        break;
      case CmpOp::kNe:
        v.forbidden.insert(c);
        break;
      case CmpOp::kLt: v.hi = std::min(v.hi, c - 1); break;
      case CmpOp::kLe: v.hi = std::min(v.hi, c); break;
      case CmpOp::kGt: v.lo = std::max(v.lo, c + 1); break;
      case CmpOp::kGe: v.lo = std::max(v.lo, c); break;
    }
    return v.lo <= v.hi;
  }

  const ValidatedPolicy& vp_;
  std::map<std::string, VarState> vars_;
};

class SatChecker {
 public:
  explicit SatChecker(const ValidatedPolicy& vp) : term_(vp) {}

  // Satisfiability of the conjunction of two branch paths, by bounded DNF
  // expansion. On budget exhaustion the answer is "satisfiable" so the
  // overall check stays conservative (it may reject, never wrongly accept).
  bool satisfiable(const Branch& a, const Branch& b) {
    budget_ = 4096;
    std::vector<std::pair<const Pred*, bool>> pending = a.raw;
    pending.insert(pending.end(), b.raw.begin(), b.raw.end());
    std::vector<Lit> atoms;
    return expand(pending, atoms);
  }

 private:
  bool expand(std::vector<std::pair<const Pred*, bool>> pending, std::vector<Lit> atoms) {
    if (--budget_ <= 0) return true;
    while (!pending.empty()) {
      auto [p, pol] = pending.back();
      pending.pop_back();
      switch (p->kind) {
        case Pred::Kind::kCompare:
        case Pred::Kind::kMember:
          atoms.push_back({p, pol});
          break;
        case Pred::Kind::kNot:
          pending.emplace_back(p->a.get(), !pol);
          break;
        case Pred::Kind::kAnd:
          if (pol) {
            pending.emplace_back(p->a.get(), true);
            pending.emplace_back(p->b.get(), true);
          } else {
            // !(A & B) = !A | !B: case split.
            auto left = pending;
            left.emplace_back(p->a.get(), false);
            if (expand(std::move(left), atoms)) return true;
            pending.emplace_back(p->b.get(), false);
          }
          break;
        case Pred::Kind::kOr:
          if (pol) {
            auto left = pending;
            left.emplace_back(p->a.get(), true);
            if (expand(std::move(left), atoms)) return true;
            pending.emplace_back(p->b.get(), true);
          } else {
            pending.emplace_back(p->a.get(), false);
            pending.emplace_back(p->b.get(), false);
          }
          break;
      }
    }
    return term_.satisfiable(atoms);
  }

  TermChecker term_;
  int budget_ = 4096;
};

}  // namespace

void detect_conflicts(const ValidatedPolicy& vp) {
  std::vector<Branch> branches;
  std::vector<std::pair<const Pred*, bool>> path;
  for (const auto& s : vp.ast.body) collect_branches(s, path, branches, vp.ast);

  // Branches sharing an action can never conflict; group first so large
  // same-action compositions cost nothing.
  std::map<std::string, std::vector<size_t>> by_action;
  for (size_t i = 0; i < branches.size(); ++i)
    by_action[to_string(*branches[i].action)].push_back(i);
  if (by_action.size() < 2) return;

  SatChecker sat(vp);
  std::vector<std::pair<std::string, std::vector<size_t>>> groups(by_action.begin(),
                                                                  by_action.end());
  for (size_t g = 0; g < groups.size(); ++g) {
    for (size_t h = g + 1; h < groups.size(); ++h) {
      for (size_t i : groups[g].second) {
        for (size_t j : groups[h].second) {
          if (sat.satisfiable(branches[i], branches[j]))
            throw ConflictError(branches[i].describe, branches[j].describe);
        }
      }
    }
  }
}

}  // namespace poise

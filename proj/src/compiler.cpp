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

#include "poise/compiler.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "poise/pretty_print.hpp"

namespace poise {

namespace {

bool is_power_of_two(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

uint32_t log2_exact(uint64_t v) {
  uint32_t n = 0;
  while (v > 1) {
    v >>= 1;
    ++n;
  }
  return n;
}

CmpOp flip(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return CmpOp::kGt;
    case CmpOp::kLe: return CmpOp::kGe;
    case CmpOp::kGt: return CmpOp::kLt;
    case CmpOp::kGe: return CmpOp::kLe;
    default: return op;
  }
}

class Lowerer {
 public:
  explicit Lowerer(const ValidatedPolicy& vp) : vp_(vp) {}

  LoweredIr run() {
    build_layout();
    ir_.string_table = vp_.string_table;
    ir_.ports = vp_.ports;
    for (const auto& m : vp_.ast.monitors) {
      MonitorSpec spec;
      spec.id = m.id;
      spec.reg = static_cast<uint32_t>(ir_.monitors.size());
      spec.pred = lower_pred(m.pred);
      spec.timeout_ns = m.window_ns;
      ir_.monitors.push_back(std::move(spec));
    }
    uint32_t branch_id = 0;
    for (const auto& s : vp_.ast.body) ir_.decision.push_back(lower_stmt(s, branch_id));
    ir_.context_types = static_cast<uint32_t>(vp_.fields.size());
    return std::move(ir_);
  }

 private:
  void build_layout() {
    uint32_t offset = 0;
    for (const auto& f : vp_.fields) {
      LayoutField lf;
      lf.name = f.name;
      lf.group = f.group;
      lf.offset_bits = offset;
      lf.width_bits = f.width;
      lf.is_signed = f.is_signed;
      offset += f.width;
      ir_.layout.fields.push_back(std::move(lf));
    }
    ir_.layout.total_bits = offset;
  }

  uint32_t new_bit() { return ir_.cond_bits++; }

  const FieldInfo& field_info(const std::string& name) {
    const FieldInfo* f = vp_.find_field(name);
    if (f == nullptr) throw CompileError("unresolved field: " + name);
    return *f;
  }

  // ---- expressions ----

  AluOperand lower_operand(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::kConst: {
        AluOperand op;
        op.kind = AluOperand::Kind::kConst;
        op.value = e->value.value & 0xFFFFFFFFull;
        return op;
      }
      case Expr::Kind::kField: {
        AluOperand op;
        op.kind = AluOperand::Kind::kField;
        op.name = e->name;
        return op;
      }
      case Expr::Kind::kMonitor: {
        AluOperand op;
        op.kind = AluOperand::Kind::kMonitor;
        op.name = e->name;
        return op;
      }
      case Expr::Kind::kBinary: {
        AluOperand op;
        op.kind = AluOperand::Kind::kOp;
        op.op = lower_binary(e);
        return op;
      }
      case Expr::Kind::kIdent:
        throw CompileError("unresolved identifier: " + e->name);
    }
    throw CompileError("bad expression");
  }

  uint32_t lower_binary(const ExprPtr& e) {
    AluOp op;
    switch (e->op) {
      case BinOp::kAdd: op.kind = AluOpKind::kAdd; break;
      case BinOp::kSub: op.kind = AluOpKind::kSub; break;
      case BinOp::kMul: op.kind = AluOpKind::kMul; break;
      case BinOp::kDiv:
      case BinOp::kMod: {
        // Switch ALUs have no divider; only power-of-two divisors can be
        // approximated by bit shifts.
        bool pow2 = e->rhs->kind == Expr::Kind::kConst &&
                    e->rhs->value.kind != ConstKind::kString &&
                    is_power_of_two(e->rhs->value.value);
        if (!pow2)
          throw CompileError(
              "unimplementable operation: " +
              std::string(e->op == BinOp::kDiv ? "division" : "modulo") +
              " by a non-power-of-two");
        op.a = lower_operand(e->lhs);
        op.b.kind = AluOperand::Kind::kConst;
        if (e->op == BinOp::kDiv) {
          op.kind = AluOpKind::kShr;
          op.b.value = log2_exact(e->rhs->value.value);
        } else {
          op.kind = AluOpKind::kAndMask;
          op.b.value = (e->rhs->value.value - 1) & 0xFFFFFFFFull;
        }
        ir_.alu_ops.push_back(std::move(op));
        return static_cast<uint32_t>(ir_.alu_ops.size() - 1);
      }
    }
    op.a = lower_operand(e->lhs);
    op.b = lower_operand(e->rhs);
    ir_.alu_ops.push_back(std::move(op));
    return static_cast<uint32_t>(ir_.alu_ops.size() - 1);
  }

  bool references_signed_field(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::kField: return field_info(e->name).is_signed;
      case Expr::Kind::kBinary:
        return references_signed_field(e->lhs) || references_signed_field(e->rhs);
      default: return false;
    }
  }

  // ---- predicates ----

  CondExpr lower_pred(const PredPtr& p) {
    switch (p->kind) {
      case Pred::Kind::kCompare: return lower_compare(p);
      case Pred::Kind::kMember: return lower_member(p);
      case Pred::Kind::kAnd:
      case Pred::Kind::kOr: {
        CondExpr c;
        c.kind = p->kind == Pred::Kind::kAnd ? CondExpr::Kind::kAnd : CondExpr::Kind::kOr;
        c.kids.push_back(lower_pred(p->a));
        c.kids.push_back(lower_pred(p->b));
        return c;
      }
      case Pred::Kind::kNot: {
        CondExpr c;
        c.kind = CondExpr::Kind::kNot;
        c.kids.push_back(lower_pred(p->a));
        return c;
      }
    }
    throw CompileError("bad predicate");
  }

  // A bare field compared against a constant becomes one range-check entry
  // in a per-field context table; anything else is ALU work.
  CondExpr lower_compare(const PredPtr& p) {
    const ExprPtr* field_side = nullptr;
    const ExprPtr* const_side = nullptr;
    CmpOp cmp = p->cmp;
    if (p->lhs->kind == Expr::Kind::kField && p->rhs->kind == Expr::Kind::kConst) {
      field_side = &p->lhs;
      const_side = &p->rhs;
    } else if (p->rhs->kind == Expr::Kind::kField && p->lhs->kind == Expr::Kind::kConst) {
      field_side = &p->rhs;
      const_side = &p->lhs;
      cmp = flip(cmp);
    }
    if (field_side != nullptr) {
      const FieldInfo& f = field_info((*field_side)->name);
      uint32_t bit = new_bit();
      TableSpec t;
      t.id = static_cast<uint32_t>(ir_.tables.size());
      t.field = f.name;
      t.field_is_builtin = f.builtin;
      t.signed_cmp = f.is_signed;
      t.kind = MatchKind::kRange;
      t.key_bits = f.width;
      t.name = "chk_" + f.name + "_" + std::to_string(t.id);
      TableEntry e;
      e.cmp = cmp;
      e.key = (*const_side)->value.value;
      e.bit = bit;
      t.entries.push_back(e);
      ir_.tables.push_back(std::move(t));
      return CondExpr::bit_ref(bit);
    }
    // Computed comparison: ALU compare writing a condition bit.
    AluOp op;
    op.kind = AluOpKind::kCmp;
    op.cmp = p->cmp;
    op.a = lower_operand(p->lhs);
    op.b = lower_operand(p->rhs);
    op.signed_cmp = references_signed_field(p->lhs) || references_signed_field(p->rhs);
    op.out_bit = new_bit();
    uint32_t bit = op.out_bit;
    ir_.alu_ops.push_back(std::move(op));
    return CondExpr::bit_ref(bit);
  }

  CondExpr lower_member(const PredPtr& p) {
    const FieldInfo& f = field_info(p->field);
    const ConstList* l = vp_.find_list(p->list);
    if (l == nullptr) throw CompileError("unresolved list: " + p->list);

    bool any_prefix = false, any_mask = false;
    for (const auto& it : l->items) {
      any_prefix |= it.kind == ConstKind::kPrefix;
      any_mask |= it.kind == ConstKind::kMasked;
    }
    TableSpec t;
    t.id = static_cast<uint32_t>(ir_.tables.size());
    t.field = f.name;
    t.field_is_builtin = f.builtin;
    t.key_bits = f.width;
    // Match kind from key shape: ternary only when keys carry wildcards,
    // lpm when keys carry prefix lengths, exact otherwise.
    t.kind = any_mask ? MatchKind::kTernary
             : any_prefix ? MatchKind::kLpm
                          : MatchKind::kExact;
    t.name = std::string(any_mask ? "tcam_" : "tbl_") + f.name + "_" +
             (p->anonymous ? "prefix" : p->list) + "_" + std::to_string(t.id);
    uint32_t bit = new_bit();
    for (const auto& it : l->items) {
      TableEntry e;
      e.key = it.value;
      e.bit = bit;
      if (t.kind == MatchKind::kLpm)
        e.prefix_len = it.kind == ConstKind::kPrefix ? it.prefix_len : 32;
      if (t.kind == MatchKind::kTernary)
        e.mask = it.kind == ConstKind::kMasked ? it.mask : ~0ull;
      t.entries.push_back(e);
    }
    ir_.tables.push_back(std::move(t));
    CondExpr c = CondExpr::bit_ref(bit);
    if (p->negated) {
      CondExpr n;
      n.kind = CondExpr::Kind::kNot;
      n.kids.push_back(std::move(c));
      return n;
    }
    return c;
  }

  // ---- statements ----

  DecisionNode lower_stmt(const Stmt& s, uint32_t& branch_id) {
    DecisionNode n;
    switch (s.kind) {
      case Stmt::Kind::kAction:
        n.kind = DecisionNode::Kind::kAction;
        n.action = s.action;
        n.branch_id = branch_id++;
        return n;
      case Stmt::Kind::kIf:
        n.kind = DecisionNode::Kind::kIf;
        n.cond = lower_pred(s.cond);
        n.then_branch.push_back(lower_stmt(*s.then_s, branch_id));
        if (s.else_s) n.else_branch.push_back(lower_stmt(*s.else_s, branch_id));
        return n;
      case Stmt::Kind::kPar: {
        // Nested parallel composition flattens into an if-chain: first
        // terminal action wins, misses fall through.
        n.kind = DecisionNode::Kind::kIf;
        n.cond.kind = CondExpr::Kind::kTrue;
        for (const auto& sub : s.par)
          n.then_branch.push_back(lower_stmt(sub, branch_id));
        return n;
      }
    }
    throw CompileError("bad statement");
  }

  const ValidatedPolicy& vp_;
  LoweredIr ir_;
};

// ---- optimization ----

std::string table_signature(const TableSpec& t) {
  std::ostringstream os;
  os << t.field << '/' << static_cast<int>(t.kind) << '/' << t.key_bits << '/'
     << t.signed_cmp << ':';
  std::vector<std::string> keys;
  for (const auto& e : t.entries) {
    std::ostringstream k;
    k << e.key << '/' << int(e.prefix_len) << '/' << e.mask << '/'
      << static_cast<int>(e.cmp);
    keys.push_back(k.str());
  }
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) os << k << ';';
  return os.str();
}

void remap_bits(CondExpr& c, const std::vector<uint32_t>& map) {
  if (c.kind == CondExpr::Kind::kBit) c.bit = map[c.bit];
  for (auto& k : c.kids) remap_bits(k, map);
}

void remap_bits(std::vector<DecisionNode>& nodes, const std::vector<uint32_t>& map) {
  for (auto& n : nodes) {
    remap_bits(n.cond, map);
    remap_bits(n.then_branch, map);
    remap_bits(n.else_branch, map);
  }
}

constexpr size_t kMergeMaxEntries = 4096;

bool disjoint_exact_keys(const TableSpec& a, const TableSpec& b) {
  std::set<uint64_t> keys;
  for (const auto& e : a.entries) keys.insert(e.key);
  for (const auto& e : b.entries)
    if (keys.count(e.key)) return false;
  return true;
}

}  // namespace

LoweredIr lower(const ValidatedPolicy& vp) { return Lowerer(vp).run(); }

void optimize(LoweredIr& ir) {
  // (a) Table deduplication: identical (field, match kind, key set) tables
  // collapse to one; the duplicates' condition bits alias the survivor's.
  std::vector<uint32_t> bit_map(ir.cond_bits);
  for (uint32_t i = 0; i < ir.cond_bits; ++i) bit_map[i] = i;

  std::map<std::string, size_t> seen;
  std::vector<TableSpec> kept;
  for (auto& t : ir.tables) {
    std::string sig = table_signature(t);
    auto it = seen.find(sig);
    if (it == seen.end()) {
      seen.emplace(std::move(sig), kept.size());
      kept.push_back(std::move(t));
      continue;
    }
    // All entries of a lowered table share one bit; alias it.
    const TableSpec& survivor = kept[it->second];
    bit_map[t.entries.front().bit] = survivor.entries.front().bit;
  }
  ir.tables = std::move(kept);

  // (b) Table merge. Range tables on the same field always concatenate (one
  // context table per field holding all its checks). Small exact tables on
  // the same field concatenate only when their key sets are disjoint.
  std::vector<TableSpec> merged;
  std::map<std::string, size_t> range_by_field;
  for (auto& t : ir.tables) {
    if (t.kind == MatchKind::kRange) {
      auto it = range_by_field.find(t.field);
      if (it != range_by_field.end()) {
        auto& dst = merged[it->second].entries;
        dst.insert(dst.end(), t.entries.begin(), t.entries.end());
        continue;
      }
      range_by_field.emplace(t.field, merged.size());
      t.name = "chk_" + t.field;
      merged.push_back(std::move(t));
      continue;
    }
    if (t.kind == MatchKind::kExact && t.entries.size() <= kMergeMaxEntries) {
      bool folded = false;
      for (auto& dst : merged) {
        if (dst.kind != MatchKind::kExact || dst.field != t.field) continue;
        if (dst.entries.size() > kMergeMaxEntries) continue;
        if (!disjoint_exact_keys(dst, t)) continue;
        dst.entries.insert(dst.entries.end(), t.entries.begin(), t.entries.end());
        folded = true;
        break;
      }
      if (folded) continue;
    }
    merged.push_back(std::move(t));
  }
  ir.tables = std::move(merged);
  for (uint32_t i = 0; i < static_cast<uint32_t>(ir.tables.size()); ++i)
    ir.tables[i].id = i;

  for (auto& t : ir.tables)
    for (auto& e : t.entries) e.bit = bit_map[e.bit];
  for (auto& op : ir.alu_ops)
    if (op.kind == AluOpKind::kCmp && op.out_bit != AluOp::kNoBit)
      op.out_bit = bit_map[op.out_bit];
  remap_bits(ir.decision, bit_map);
  for (auto& m : ir.monitors) remap_bits(m.pred, bit_map);
}

SwitchProgram allocate(LoweredIr ir, const ResourceModel& rm) {
  SwitchProgram p;
  p.layout = std::move(ir.layout);
  p.string_table = std::move(ir.string_table);
  p.ports = std::move(ir.ports);
  p.monitors = std::move(ir.monitors);
  p.decision = std::move(ir.decision);
  p.cond_bits = ir.cond_bits;
  p.context_types = ir.context_types;
  p.model = rm;

  const uint32_t S = rm.stages;
  const uint32_t T = rm.tables_per_stage;
  const uint32_t k = ir.context_types;

  if (k > S * T)
    throw ResourceError(Resource::kTables,
                        std::to_string(k) + " context types exceed the " +
                            std::to_string(S * T) + " supported context tables (" +
                            std::to_string(S) + " stages x " + std::to_string(T) + ")");
  uint32_t rounds = std::max<uint32_t>(1, (k + S - 1) / S);
  if (rounds > rm.max_recirculations)
    throw ResourceError(Resource::kRecirculations,
                        "program needs " + std::to_string(rounds) +
                            " recirculation rounds, budget is " +
                            std::to_string(rm.max_recirculations));

  std::map<std::string, uint32_t> type_index;
  for (uint32_t i = 0; i < p.layout.fields.size(); ++i)
    type_index[p.layout.fields[i].name] = i;

  std::vector<uint32_t> stage_total(S, 0);
  // A packet matches at most one context table per stage per pass.
  std::set<std::pair<uint32_t, uint32_t>> context_slot_used;  // (round, stage)

  auto place_context_table = [&](TableSpec& t, uint32_t type_idx) {
    uint32_t home_round = type_idx / S;
    uint32_t preferred = type_idx % S;
    for (uint32_t r = home_round; r < rm.max_recirculations; ++r) {
      for (uint32_t probe = 0; probe < S; ++probe) {
        uint32_t s = (preferred + probe) % S;
        if (context_slot_used.count({r, s})) continue;
        if (stage_total[s] >= T) continue;
        context_slot_used.insert({r, s});
        ++stage_total[s];
        t.round = r;
        t.stage = s;
        rounds = std::max(rounds, r + 1);
        return;
      }
    }
    throw ResourceError(Resource::kTables, "no (round, stage) slot left for context table on " + t.field);
  };

  auto place_builtin_table = [&](TableSpec& t) {
    for (uint32_t s = 0; s < S; ++s) {
      if (stage_total[s] >= T) continue;
      ++stage_total[s];
      t.round = 0;
      t.stage = s;
      return;
    }
    throw ResourceError(Resource::kTables, "no stage left for table on " + t.field);
  };

  for (auto& t : ir.tables) {
    if (t.field_is_builtin)
      place_builtin_table(t);
    else
      place_context_table(t, type_index.at(t.field));
  }

  // ALU ops first-fit by dependency depth; an overfull slot pushes the op to
  // the next stage.
  const uint32_t max_slots = S * rm.max_recirculations;
  std::vector<uint32_t> alu_load(max_slots, 0);
  std::vector<uint32_t> op_slot(ir.alu_ops.size(), 0);
  for (size_t i = 0; i < ir.alu_ops.size(); ++i) {
    AluOp& op = ir.alu_ops[i];
    uint32_t min_slot = 0;
    if (op.a.kind == AluOperand::Kind::kOp) min_slot = std::max(min_slot, op_slot[op.a.op] + 1);
    if (op.b.kind == AluOperand::Kind::kOp) min_slot = std::max(min_slot, op_slot[op.b.op] + 1);
    uint32_t slot = min_slot;
    while (slot < max_slots && alu_load[slot] >= rm.alus_per_stage) ++slot;
    if (slot >= max_slots)
      throw ResourceError(Resource::kStages, "ALU expression too deep for the pipeline");
    ++alu_load[slot];
    op_slot[i] = slot;
    op.stage = slot % S;
    op.round = slot / S;
    if (op.round >= rounds) {
      if (op.round >= rm.max_recirculations)
        throw ResourceError(Resource::kRecirculations, "ALU depth exceeds recirculation budget");
      rounds = op.round + 1;
    }
  }

  for (auto& m : p.monitors) {
    m.stage = S - 1;
    m.round = rounds - 1;
  }

  uint64_t sram = 0, tcam = 0;
  for (const auto& t : ir.tables)
    (t.uses_tcam() ? tcam : sram) += t.memory_bytes();
  if (sram > rm.sram_bytes)
    throw ResourceError(Resource::kSram, std::to_string(sram) + " bytes needed, budget " +
                                             std::to_string(rm.sram_bytes));
  if (tcam > rm.tcam_bytes)
    throw ResourceError(Resource::kTcam, std::to_string(tcam) + " bytes needed, budget " +
                                             std::to_string(rm.tcam_bytes));

  p.tables = std::move(ir.tables);
  p.alu_ops = std::move(ir.alu_ops);
  p.rounds = rounds;
  p.memory.sram_bytes = sram;
  p.memory.tcam_bytes = tcam;
  p.memory.tables = static_cast<uint32_t>(p.tables.size());
  p.memory.alu_ops = static_cast<uint32_t>(p.alu_ops.size());
  std::set<uint32_t> stages_used;
  for (const auto& t : p.tables) stages_used.insert(t.stage);
  for (const auto& op : p.alu_ops) stages_used.insert(op.stage);
  p.memory.stages_used = static_cast<uint32_t>(stages_used.size());
  return p;
}

SwitchProgram compile_policy(const ValidatedPolicy& vp, const CompileOptions& opts) {
  if (opts.check_conflicts) detect_conflicts(vp);
  LoweredIr ir = lower(vp);
  if (opts.run_optimizer) optimize(ir);
  return allocate(std::move(ir), opts.model);
}

}  // namespace poise

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

#include "poise/pipeline.hpp"

#include <map>

namespace poise {

namespace {

uint32_t mask_to_width(uint64_t v, uint32_t width) {
  uint32_t w = width >= 32 ? 32 : width;
  uint64_t m = (w == 32) ? 0xFFFFFFFFull : ((1ull << w) - 1);
  return static_cast<uint32_t>(v & m);
}

bool compare(CmpOp op, uint32_t a, uint32_t b, bool is_signed) {
  if (is_signed) {
    int32_t sa = static_cast<int32_t>(a), sb = static_cast<int32_t>(b);
    switch (op) {
      case CmpOp::kEq: return sa == sb;
      case CmpOp::kNe: return sa != sb;
      case CmpOp::kLt: return sa < sb;
      case CmpOp::kLe: return sa <= sb;
      case CmpOp::kGt: return sa > sb;
      case CmpOp::kGe: return sa >= sb;
    }
  }
  switch (op) {
    case CmpOp::kEq: return a == b;
    case CmpOp::kNe: return a != b;
    case CmpOp::kLt: return a < b;
    case CmpOp::kLe: return a <= b;
    case CmpOp::kGt: return a > b;
    case CmpOp::kGe: return a >= b;
  }
  return false;
}

// Sign-extend a field value of `width` bits into the 32-bit ALU word.
uint32_t load_field(uint64_t raw, uint32_t width, bool is_signed) {
  uint32_t w = width >= 32 ? 32 : width;
  uint32_t v = mask_to_width(raw, w);
  if (is_signed && w < 32 && (v & (1u << (w - 1)))) v |= ~((1u << w) - 1);
  return v;
}

class Evaluator {
 public:
  Evaluator(const SwitchProgram& prog, const std::vector<uint64_t>& ctx,
            const BuiltinView& builtins, MonitorBank* monitors, TimePs now)
      : prog_(prog), ctx_(ctx), builtins_(builtins), monitors_(monitors), now_(now) {
    bits_.assign(prog.cond_bits, false);
  }

  EvalResult run(bool update_monitors) {
    run_tables();
    // ALU ops that transitively read a monitor must observe post-update
    // values; everything else (including monitor update predicates) runs on
    // the packet's own context first.
    std::vector<bool> reads_monitor(prog_.alu_ops.size(), false);
    for (size_t i = 0; i < prog_.alu_ops.size(); ++i) {
      const AluOp& op = prog_.alu_ops[i];
      auto dep = [&](const AluOperand& o) {
        if (o.kind == AluOperand::Kind::kMonitor) return true;
        if (o.kind == AluOperand::Kind::kOp) return static_cast<bool>(reads_monitor[o.op]);
        return false;
      };
      reads_monitor[i] = dep(op.a) || dep(op.b);
    }
    run_alu(reads_monitor, false);
    if (update_monitors && monitors_ != nullptr) {
      for (size_t i = 0; i < prog_.monitors.size(); ++i)
        if (eval_cond(prog_.monitors[i].pred, bits_)) monitors_->bump(i, now_);
    }
    run_alu(reads_monitor, true);
    return walk_decision();
  }

 private:
  std::optional<uint64_t> field_raw(const std::string& name, bool builtin) const {
    if (builtin) {
      if (name == "sip") return builtins_.sip;
      if (name == "dip") return builtins_.dip;
      if (name == "sport") return builtins_.sport;
      if (name == "proto") return builtins_.proto;
      return std::nullopt;
    }
    for (size_t i = 0; i < prog_.layout.fields.size(); ++i)
      if (prog_.layout.fields[i].name == name)
        return i < ctx_.size() ? std::optional<uint64_t>(ctx_[i]) : std::nullopt;
    return std::nullopt;
  }

  void run_tables() {
    for (const auto& t : prog_.tables) {
      // A packet without this context type misses the table entirely.
      std::optional<uint64_t> raw = field_raw(t.field, t.field_is_builtin);
      if (!raw) continue;
      uint32_t v = mask_to_width(*raw, t.key_bits);
      for (const auto& e : t.entries) {
        bool hit = false;
        switch (t.kind) {
          case MatchKind::kExact:
            hit = v == mask_to_width(e.key, t.key_bits);
            break;
          case MatchKind::kLpm: {
            uint32_t plen = e.prefix_len;
            uint32_t shift = plen >= 32 ? 0 : 32 - plen;
            hit = plen == 0 || ((v >> shift) == (mask_to_width(e.key, 32) >> shift));
            break;
          }
          case MatchKind::kTernary: {
            uint32_t m = mask_to_width(e.mask, t.key_bits);
            hit = (v & m) == (mask_to_width(e.key, t.key_bits) & m);
            break;
          }
          case MatchKind::kRange: {
            uint32_t fv = load_field(*raw, t.key_bits, t.signed_cmp);
            uint32_t kv = static_cast<uint32_t>(e.key & 0xFFFFFFFFull);
            hit = compare(e.cmp, fv, kv, t.signed_cmp);
            break;
          }
        }
        if (hit) bits_[e.bit] = true;
      }
    }
  }

  uint32_t operand_value(const AluOperand& o) const {
    switch (o.kind) {
      case AluOperand::Kind::kConst:
        return static_cast<uint32_t>(o.value & 0xFFFFFFFFull);
      case AluOperand::Kind::kField: {
        const LayoutField* f = prog_.layout.find(o.name);
        std::optional<uint64_t> raw = field_raw(o.name, f == nullptr);
        if (!raw) return 0;
        if (f != nullptr) return load_field(*raw, f->width_bits, f->is_signed);
        return static_cast<uint32_t>(*raw);
      }
      case AluOperand::Kind::kMonitor: {
        if (monitors_ == nullptr) return 0;
        for (size_t i = 0; i < prog_.monitors.size(); ++i)
          if (prog_.monitors[i].id == o.name) return monitors_->read(i, now_);
        return 0;
      }
      case AluOperand::Kind::kOp:
        return results_.at(o.op);
    }
    return 0;
  }

  void run_alu(const std::vector<bool>& reads_monitor, bool monitor_phase) {
    if (results_.size() != prog_.alu_ops.size())
      results_.assign(prog_.alu_ops.size(), 0);
    for (size_t i = 0; i < prog_.alu_ops.size(); ++i) {
      if (reads_monitor[i] != monitor_phase) continue;
      const AluOp& op = prog_.alu_ops[i];
      uint32_t a = operand_value(op.a);
      uint32_t b = operand_value(op.b);
      uint32_t r = 0;
      switch (op.kind) {
        case AluOpKind::kAdd: r = a + b; break;
        case AluOpKind::kSub: r = a - b; break;
        case AluOpKind::kMul: r = a * b; break;
        case AluOpKind::kShr: r = b >= 32 ? 0 : a >> b; break;
        case AluOpKind::kAndMask: r = a & b; break;
        case AluOpKind::kCmp: {
          bool hit = compare(op.cmp, a, b, op.signed_cmp);
          if (op.out_bit != AluOp::kNoBit) bits_[op.out_bit] = hit;
          r = hit ? 1 : 0;
          break;
        }
      }
      results_[i] = r;
    }
  }

  const DecisionNode* first_action(const std::vector<DecisionNode>& nodes) {
    for (const auto& n : nodes) {
      if (n.kind == DecisionNode::Kind::kAction) return &n;
      const auto& branch = eval_cond(n.cond, bits_) ? n.then_branch : n.else_branch;
      if (const DecisionNode* hit = first_action(branch)) return hit;
    }
    return nullptr;
  }

  EvalResult walk_decision() {
    EvalResult r;
    if (const DecisionNode* n = first_action(prog_.decision)) {
      r.action = n->action;
      r.branch_id = n->branch_id;
      r.matched = true;
      return r;
    }
    r.action = prog_.default_action;
    return r;
  }

  const SwitchProgram& prog_;
  const std::vector<uint64_t>& ctx_;
  const BuiltinView& builtins_;
  MonitorBank* monitors_;
  TimePs now_;
  std::vector<bool> bits_;
  std::vector<uint32_t> results_;
};

}  // namespace

bool eval_cond(const CondExpr& c, const std::vector<bool>& bits) {
  switch (c.kind) {
    case CondExpr::Kind::kTrue: return true;
    case CondExpr::Kind::kBit: return bits[c.bit];
    case CondExpr::Kind::kNot: return !eval_cond(c.kids[0], bits);
    case CondExpr::Kind::kAnd:
      for (const auto& k : c.kids)
        if (!eval_cond(k, bits)) return false;
      return true;
    case CondExpr::Kind::kOr:
      for (const auto& k : c.kids)
        if (eval_cond(k, bits)) return true;
      return false;
  }
  return false;
}

EvalResult eval_policy(const SwitchProgram& prog, const std::vector<uint64_t>& ctx_values,
                       const BuiltinView& builtins, MonitorBank* monitors, TimePs now,
                       bool update_monitors) {
  Evaluator ev(prog, ctx_values, builtins, monitors, now);
  return ev.run(update_monitors);
}

}  // namespace poise

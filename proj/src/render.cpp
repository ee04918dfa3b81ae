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
// Human-readable P4-like rendering of an allocated program: header stack,
// tables, monitor registers, and the staged ingress control flow. Output is
// deterministic for a given program (stable ordering, no timestamps).

#include <sstream>

#include "poise/compiler.hpp"

namespace poise {

namespace {

std::string cond_text(const CondExpr& c) {
  switch (c.kind) {
    case CondExpr::Kind::kTrue: return "true";
    case CondExpr::Kind::kBit: return "cond[" + std::to_string(c.bit) + "]";
    case CondExpr::Kind::kNot: return "!" + cond_text(c.kids[0]);
    case CondExpr::Kind::kAnd:
    case CondExpr::Kind::kOr: {
      std::string sep = c.kind == CondExpr::Kind::kAnd ? " && " : " || ";
      std::string out = "(";
      for (size_t i = 0; i < c.kids.size(); ++i) {
        if (i) out += sep;
        out += cond_text(c.kids[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string action_text(const Action& a) {
  switch (a.kind) {
    case ActionKind::kDrop: return "mark_to_drop()";
    case ActionKind::kFwd: return "fwd(" + a.port + ")";
    case ActionKind::kFlood: return "flood()";
    case ActionKind::kLog: return "fwd(cpu)  /* log */";
  }
  return "?";
}

void render_decision(std::ostringstream& os, const std::vector<DecisionNode>& nodes,
                     int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (const auto& n : nodes) {
    if (n.kind == DecisionNode::Kind::kAction) {
      os << pad << action_text(n.action) << ";  // branch " << n.branch_id << "\n";
      continue;
    }
    os << pad << "if (" << cond_text(n.cond) << ") {\n";
    render_decision(os, n.then_branch, indent + 1);
    os << pad << "}";
    if (!n.else_branch.empty()) {
      os << " else {\n";
      render_decision(os, n.else_branch, indent + 1);
      os << pad << "}";
    }
    os << "\n";
  }
}

std::string operand_text(const AluOperand& o) {
  switch (o.kind) {
    case AluOperand::Kind::kConst: return std::to_string(o.value);
    case AluOperand::Kind::kField: return "ctx." + o.name;
    case AluOperand::Kind::kMonitor: return "monitor_" + o.name;
    case AluOperand::Kind::kOp: return "t" + std::to_string(o.op);
  }
  return "?";
}

}  // namespace

std::string render(const SwitchProgram& p) {
  std::ostringstream os;
  os << "// generated by the poise compiler; " << p.context_types
     << " context type(s), " << p.rounds << " round(s)\n\n";

  // Headers: one per group, in layout order.
  std::string open_group;
  bool any_header = false;
  for (const auto& f : p.layout.fields) {
    std::string group = f.group.empty() ? f.name : f.group;
    if (group != open_group) {
      if (!open_group.empty()) os << "}\n";
      os << "header " << group << "_t {\n";
      open_group = group;
      any_header = true;
    }
    os << "  bit<" << f.width_bits << "> " << f.name << ";"
       << (f.is_signed ? "  // signed" : "") << "\n";
  }
  if (any_header) os << "}\n";
  os << "\n";

  for (const auto& m : p.monitors) {
    os << "register<bit<" << m.width << ">> monitor_" << m.id
       << ";      // value, timeout " << m.timeout_ns / 1'000'000'000.0 << " s\n";
    os << "register<bit<48>> monitor_" << m.id << "_ts;   // last event timestamp\n";
  }
  if (!p.monitors.empty()) os << "\n";

  for (const auto& t : p.tables) {
    os << "table " << t.name << " {\n";
    os << "  key = { " << (t.field_is_builtin ? "hdr." : "ctx.") << t.field << " : "
       << match_kind_name(t.kind) << "; }\n";
    os << "  size = " << t.entries.size() << ";\n";
    os << "  // stage " << t.stage << ", round " << t.round << ", "
       << (t.uses_tcam() ? "TCAM" : "SRAM") << " " << t.memory_bytes() << " B\n";
    os << "}\n";
  }
  if (!p.tables.empty()) os << "\n";

  os << "control Ingress {\n";
  os << "  apply {\n";
  for (uint32_t r = 0; r < p.rounds; ++r) {
    os << "    // ---- round " << r << (r > 0 ? " (recirculated)" : "") << " ----\n";
    for (uint32_t s = 0; s < p.model.stages; ++s) {
      bool header_printed = false;
      auto stage_header = [&]() {
        if (!header_printed) {
          os << "    // stage " << s << "\n";
          header_printed = true;
        }
      };
      for (const auto& t : p.tables) {
        if (t.round != r || t.stage != s) continue;
        stage_header();
        os << "    " << t.name << ".apply();\n";
      }
      for (size_t i = 0; i < p.alu_ops.size(); ++i) {
        const AluOp& op = p.alu_ops[i];
        if (op.round != r || op.stage != s) continue;
        stage_header();
        if (op.kind == AluOpKind::kCmp) {
          os << "    cond[" << op.out_bit << "] = " << operand_text(op.a) << " "
             << cmp_op_text(op.cmp) << " " << operand_text(op.b)
             << (op.signed_cmp ? ";  // signed\n" : ";\n");
          continue;
        }
        const char* sym = op.kind == AluOpKind::kAdd   ? "+"
                          : op.kind == AluOpKind::kSub ? "-"
                          : op.kind == AluOpKind::kMul ? "*"
                          : op.kind == AluOpKind::kShr ? ">>"
                                                       : "&";
        os << "    t" << i << " = " << operand_text(op.a) << " " << sym << " "
           << operand_text(op.b) << ";\n";
      }
    }
  }
  for (const auto& m : p.monitors) {
    os << "    if (" << cond_text(m.pred) << ") { monitor_" << m.id
       << "++; monitor_" << m.id << "_ts = NOW; }\n";
  }
  os << "    // decision\n";
  render_decision(os, p.decision, 2);
  os << "    " << action_text(p.default_action) << ";  // default\n";
  os << "  }\n";
  os << "}\n";
  return os.str();
}

}  // namespace poise

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

#include "poise/program.hpp"

#include <sstream>

#include <json.hpp>

namespace poise {

using nlohmann::json;

const LayoutField* ContextLayout::find(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

const char* match_kind_name(MatchKind k) {
  switch (k) {
    case MatchKind::kExact: return "exact";
    case MatchKind::kLpm: return "lpm";
    case MatchKind::kTernary: return "ternary";
    case MatchKind::kRange: return "range";
  }
  return "?";
}

namespace {

MatchKind match_kind_from(const std::string& s) {
  if (s == "exact") return MatchKind::kExact;
  if (s == "lpm") return MatchKind::kLpm;
  if (s == "ternary") return MatchKind::kTernary;
  if (s == "range") return MatchKind::kRange;
  throw PoiseError("bad match kind: " + s);
}

const char* cmp_name(CmpOp c) {
  switch (c) {
    case CmpOp::kEq: return "eq";
    case CmpOp::kNe: return "ne";
    case CmpOp::kLt: return "lt";
    case CmpOp::kLe: return "le";
    case CmpOp::kGt: return "gt";
    case CmpOp::kGe: return "ge";
  }
  return "?";
}

CmpOp cmp_from(const std::string& s) {
  if (s == "eq") return CmpOp::kEq;
  if (s == "ne") return CmpOp::kNe;
  if (s == "lt") return CmpOp::kLt;
  if (s == "le") return CmpOp::kLe;
  if (s == "gt") return CmpOp::kGt;
  if (s == "ge") return CmpOp::kGe;
  throw PoiseError("bad cmp op: " + s);
}

const char* action_kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::kDrop: return "drop";
    case ActionKind::kFwd: return "fwd";
    case ActionKind::kFlood: return "flood";
    case ActionKind::kLog: return "log";
  }
  return "?";
}

ActionKind action_kind_from(const std::string& s) {
  if (s == "drop") return ActionKind::kDrop;
  if (s == "fwd") return ActionKind::kFwd;
  if (s == "flood") return ActionKind::kFlood;
  if (s == "log") return ActionKind::kLog;
  throw PoiseError("bad action kind: " + s);
}

json action_to_json(const Action& a) {
  json j;
  j["kind"] = action_kind_name(a.kind);
  if (a.kind == ActionKind::kFwd) j["port"] = a.port;
  return j;
}

Action action_from_json(const json& j) {
  Action a;
  a.kind = action_kind_from(j.at("kind").get<std::string>());
  if (a.kind == ActionKind::kFwd) a.port = j.at("port").get<std::string>();
  return a;
}

json cond_to_json(const CondExpr& c) {
  switch (c.kind) {
    case CondExpr::Kind::kTrue: return json{{"true", true}};
    case CondExpr::Kind::kBit: return json{{"bit", c.bit}};
    case CondExpr::Kind::kNot: return json{{"not", cond_to_json(c.kids[0])}};
    case CondExpr::Kind::kAnd: {
      json kids = json::array();
      for (const auto& k : c.kids) kids.push_back(cond_to_json(k));
      return json{{"and", kids}};
    }
    case CondExpr::Kind::kOr: {
      json kids = json::array();
      for (const auto& k : c.kids) kids.push_back(cond_to_json(k));
      return json{{"or", kids}};
    }
  }
  throw PoiseError("bad cond expr");
}

CondExpr cond_from_json(const json& j) {
  CondExpr c;
  if (j.contains("true")) {
    c.kind = CondExpr::Kind::kTrue;
  } else if (j.contains("bit")) {
    c.kind = CondExpr::Kind::kBit;
    c.bit = j.at("bit").get<uint32_t>();
  } else if (j.contains("not")) {
    c.kind = CondExpr::Kind::kNot;
    c.kids.push_back(cond_from_json(j.at("not")));
  } else if (j.contains("and") || j.contains("or")) {
    bool is_and = j.contains("and");
    c.kind = is_and ? CondExpr::Kind::kAnd : CondExpr::Kind::kOr;
    for (const auto& k : j.at(is_and ? "and" : "or")) c.kids.push_back(cond_from_json(k));
  } else {
    throw PoiseError("bad cond expr json");
  }
  return c;
}

json decision_to_json(const std::vector<DecisionNode>& nodes) {
  json arr = json::array();
  for (const auto& n : nodes) {
    json j;
    if (n.kind == DecisionNode::Kind::kAction) {
      j["action"] = action_to_json(n.action);
      j["branch"] = n.branch_id;
    } else {
      j["if"] = cond_to_json(n.cond);
      j["then"] = decision_to_json(n.then_branch);
      if (!n.else_branch.empty()) j["else"] = decision_to_json(n.else_branch);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<DecisionNode> decision_from_json(const json& arr) {
  std::vector<DecisionNode> out;
  for (const auto& j : arr) {
    DecisionNode n;
    if (j.contains("action")) {
      n.kind = DecisionNode::Kind::kAction;
      n.action = action_from_json(j.at("action"));
      n.branch_id = j.at("branch").get<uint32_t>();
    } else {
      n.kind = DecisionNode::Kind::kIf;
      n.cond = cond_from_json(j.at("if"));
      n.then_branch = decision_from_json(j.at("then"));
      if (j.contains("else")) n.else_branch = decision_from_json(j.at("else"));
    }
    out.push_back(std::move(n));
  }
  return out;
}

json operand_to_json(const AluOperand& o) {
  json j;
  switch (o.kind) {
    case AluOperand::Kind::kConst: j["const"] = o.value; break;
    case AluOperand::Kind::kField: j["field"] = o.name; break;
    case AluOperand::Kind::kMonitor: j["monitor"] = o.name; break;
    case AluOperand::Kind::kOp: j["op"] = o.op; break;
  }
  return j;
}

AluOperand operand_from_json(const json& j) {
  AluOperand o;
  if (j.contains("const")) {
    o.kind = AluOperand::Kind::kConst;
    o.value = j.at("const").get<uint64_t>();
  } else if (j.contains("field")) {
    o.kind = AluOperand::Kind::kField;
    o.name = j.at("field").get<std::string>();
  } else if (j.contains("monitor")) {
    o.kind = AluOperand::Kind::kMonitor;
    o.name = j.at("monitor").get<std::string>();
  } else if (j.contains("op")) {
    o.kind = AluOperand::Kind::kOp;
    o.op = j.at("op").get<uint32_t>();
  } else {
    throw PoiseError("bad ALU operand json");
  }
  return o;
}

const char* alu_kind_name(AluOpKind k) {
  switch (k) {
    case AluOpKind::kAdd: return "add";
    case AluOpKind::kSub: return "sub";
    case AluOpKind::kMul: return "mul";
    case AluOpKind::kShr: return "shr";
    case AluOpKind::kAndMask: return "and";
    case AluOpKind::kCmp: return "cmp";
  }
  return "?";
}

AluOpKind alu_kind_from(const std::string& s) {
  if (s == "add") return AluOpKind::kAdd;
  if (s == "sub") return AluOpKind::kSub;
  if (s == "mul") return AluOpKind::kMul;
  if (s == "shr") return AluOpKind::kShr;
  if (s == "and") return AluOpKind::kAndMask;
  if (s == "cmp") return AluOpKind::kCmp;
  throw PoiseError("bad ALU op kind: " + s);
}

}  // namespace

std::string SwitchProgram::to_json_text() const {
  json j;
  j["schema"] = kProgramSchema;
  j["context_protocol"] = layout.protocol_id;

  json fields = json::array();
  for (const auto& f : layout.fields) {
    json fj;
    fj["name"] = f.name;
    if (!f.group.empty()) fj["group"] = f.group;
    fj["offset_bits"] = f.offset_bits;
    fj["width_bits"] = f.width_bits;
    fj["signed"] = f.is_signed;
    fields.push_back(std::move(fj));
  }
  j["layout"] = {{"fields", fields}, {"total_bits", layout.total_bits}};
  j["string_table"] = string_table;
  j["ports"] = ports;

  json tables_j = json::array();
  for (const auto& t : tables) {
    json tj;
    tj["id"] = t.id;
    tj["name"] = t.name;
    tj["field"] = t.field;
    tj["builtin"] = t.field_is_builtin;
    tj["signed"] = t.signed_cmp;
    tj["kind"] = match_kind_name(t.kind);
    tj["key_bits"] = t.key_bits;
    tj["stage"] = t.stage;
    tj["round"] = t.round;
    json ents = json::array();
    for (const auto& e : t.entries) {
      json ej;
      ej["key"] = e.key;
      ej["bit"] = e.bit;
      if (t.kind == MatchKind::kLpm) ej["plen"] = e.prefix_len;
      if (t.kind == MatchKind::kTernary) ej["mask"] = e.mask;
      if (t.kind == MatchKind::kRange) ej["cmp"] = cmp_name(e.cmp);
      ents.push_back(std::move(ej));
    }
    tj["entries"] = std::move(ents);
    tables_j.push_back(std::move(tj));
  }
  j["tables"] = std::move(tables_j);

  json alus = json::array();
  for (const auto& op : alu_ops) {
    json oj;
    oj["kind"] = alu_kind_name(op.kind);
    oj["a"] = operand_to_json(op.a);
    oj["b"] = operand_to_json(op.b);
    if (op.kind == AluOpKind::kCmp) {
      oj["cmp"] = cmp_name(op.cmp);
      oj["signed"] = op.signed_cmp;
      oj["out_bit"] = op.out_bit;
    }
    oj["stage"] = op.stage;
    oj["round"] = op.round;
    alus.push_back(std::move(oj));
  }
  j["alu_ops"] = std::move(alus);

  json mons = json::array();
  for (const auto& m : monitors) {
    json mj;
    mj["id"] = m.id;
    mj["reg"] = m.reg;
    mj["width"] = m.width;
    mj["pred"] = cond_to_json(m.pred);
    mj["timeout_ns"] = m.timeout_ns;
    mj["stage"] = m.stage;
    mj["round"] = m.round;
    mons.push_back(std::move(mj));
  }
  j["monitors"] = std::move(mons);

  j["decision"] = decision_to_json(decision);
  j["default_action"] = action_to_json(default_action);
  j["cond_bits"] = cond_bits;
  j["context_types"] = context_types;
  j["rounds"] = rounds;
  j["resource_model"] = {{"stages", model.stages},
                         {"tables_per_stage", model.tables_per_stage},
                         {"sram_bytes", model.sram_bytes},
                         {"tcam_bytes", model.tcam_bytes},
                         {"alus_per_stage", model.alus_per_stage},
                         {"max_recirculations", model.max_recirculations}};
  j["memory"] = {{"sram_bytes", memory.sram_bytes},
                 {"tcam_bytes", memory.tcam_bytes},
                 {"tables", memory.tables},
                 {"alu_ops", memory.alu_ops},
                 {"stages_used", memory.stages_used}};
  return j.dump(2) + "\n";
}

SwitchProgram SwitchProgram::from_json_text(const std::string& text) {
  json j = json::parse(text);
  if (j.at("schema").get<std::string>() != kProgramSchema)
    throw PoiseError("unsupported program schema: " + j.at("schema").get<std::string>());

  SwitchProgram p;
  p.layout.protocol_id = static_cast<uint8_t>(j.at("context_protocol").get<uint32_t>());
  for (const auto& fj : j.at("layout").at("fields")) {
    LayoutField f;
    f.name = fj.at("name").get<std::string>();
    if (fj.contains("group")) f.group = fj.at("group").get<std::string>();
    f.offset_bits = fj.at("offset_bits").get<uint32_t>();
    f.width_bits = fj.at("width_bits").get<uint32_t>();
    f.is_signed = fj.at("signed").get<bool>();
    p.layout.fields.push_back(std::move(f));
  }
  p.layout.total_bits = j.at("layout").at("total_bits").get<uint32_t>();
  p.string_table = j.at("string_table").get<std::vector<std::string>>();
  p.ports = j.at("ports").get<std::vector<std::string>>();

  for (const auto& tj : j.at("tables")) {
    TableSpec t;
    t.id = tj.at("id").get<uint32_t>();
    t.name = tj.at("name").get<std::string>();
    t.field = tj.at("field").get<std::string>();
    t.field_is_builtin = tj.at("builtin").get<bool>();
    t.signed_cmp = tj.at("signed").get<bool>();
    t.kind = match_kind_from(tj.at("kind").get<std::string>());
    t.key_bits = tj.at("key_bits").get<uint32_t>();
    t.stage = tj.at("stage").get<uint32_t>();
    t.round = tj.at("round").get<uint32_t>();
    for (const auto& ej : tj.at("entries")) {
      TableEntry e;
      e.key = ej.at("key").get<uint64_t>();
      e.bit = ej.at("bit").get<uint32_t>();
      if (ej.contains("plen")) e.prefix_len = static_cast<uint8_t>(ej.at("plen").get<uint32_t>());
      if (ej.contains("mask")) e.mask = ej.at("mask").get<uint64_t>();
      if (ej.contains("cmp")) e.cmp = cmp_from(ej.at("cmp").get<std::string>());
      t.entries.push_back(e);
    }
    p.tables.push_back(std::move(t));
  }

  for (const auto& oj : j.at("alu_ops")) {
    AluOp op;
    op.kind = alu_kind_from(oj.at("kind").get<std::string>());
    op.a = operand_from_json(oj.at("a"));
    op.b = operand_from_json(oj.at("b"));
    if (op.kind == AluOpKind::kCmp) {
      op.cmp = cmp_from(oj.at("cmp").get<std::string>());
      op.signed_cmp = oj.at("signed").get<bool>();
      op.out_bit = oj.at("out_bit").get<uint32_t>();
    }
    op.stage = oj.at("stage").get<uint32_t>();
    op.round = oj.at("round").get<uint32_t>();
    p.alu_ops.push_back(std::move(op));
  }

  for (const auto& mj : j.at("monitors")) {
    MonitorSpec m;
    m.id = mj.at("id").get<std::string>();
    m.reg = mj.at("reg").get<uint32_t>();
    m.width = mj.at("width").get<uint32_t>();
    m.pred = cond_from_json(mj.at("pred"));
    m.timeout_ns = mj.at("timeout_ns").get<uint64_t>();
    m.stage = mj.at("stage").get<uint32_t>();
    m.round = mj.at("round").get<uint32_t>();
    p.monitors.push_back(std::move(m));
  }

  p.decision = decision_from_json(j.at("decision"));
  p.default_action = action_from_json(j.at("default_action"));
  p.cond_bits = j.at("cond_bits").get<uint32_t>();
  p.context_types = j.at("context_types").get<uint32_t>();
  p.rounds = j.at("rounds").get<uint32_t>();
  const auto& rm = j.at("resource_model");
  p.model.stages = rm.at("stages").get<uint32_t>();
  p.model.tables_per_stage = rm.at("tables_per_stage").get<uint32_t>();
  p.model.sram_bytes = rm.at("sram_bytes").get<uint64_t>();
  p.model.tcam_bytes = rm.at("tcam_bytes").get<uint64_t>();
  p.model.alus_per_stage = rm.at("alus_per_stage").get<uint32_t>();
  p.model.max_recirculations = rm.at("max_recirculations").get<uint32_t>();
  const auto& mem = j.at("memory");
  p.memory.sram_bytes = mem.at("sram_bytes").get<uint64_t>();
  p.memory.tcam_bytes = mem.at("tcam_bytes").get<uint64_t>();
  p.memory.tables = mem.at("tables").get<uint32_t>();
  p.memory.alu_ops = mem.at("alu_ops").get<uint32_t>();
  p.memory.stages_used = mem.at("stages_used").get<uint32_t>();
  return p;
}

namespace {

void put_bits(std::vector<uint8_t>& buf, uint32_t offset, uint32_t width, uint64_t v) {
  for (uint32_t i = 0; i < width; ++i) {
    uint32_t pos = offset + i;
    uint64_t bit = (v >> (width - 1 - i)) & 1;
    if (bit) buf[pos / 8] |= static_cast<uint8_t>(0x80u >> (pos % 8));
  }
}

uint64_t get_bits(const std::vector<uint8_t>& buf, uint32_t offset, uint32_t width) {
  uint64_t v = 0;
  for (uint32_t i = 0; i < width; ++i) {
    uint32_t pos = offset + i;
    uint64_t bit = (buf[pos / 8] >> (7 - pos % 8)) & 1;
    v = (v << 1) | bit;
  }
  return v;
}

}  // namespace

std::vector<uint8_t> layout_encode(const ContextLayout& layout,
                                   const std::vector<uint64_t>& values) {
  if (values.size() != layout.fields.size())
    throw PoiseError("context encode: " + std::to_string(layout.fields.size()) +
                     " fields expected, " + std::to_string(values.size()) + " given");
  std::vector<uint8_t> buf(layout.bytes(), 0);
  for (size_t i = 0; i < layout.fields.size(); ++i) {
    const LayoutField& f = layout.fields[i];
    uint64_t limit = f.width_bits >= 64 ? ~0ull : ((1ull << f.width_bits) - 1);
    if (values[i] > limit)
      throw PoiseError("context encode: value " + std::to_string(values[i]) +
                       " exceeds " + std::to_string(f.width_bits) + "-bit field " +
                       f.name);
    put_bits(buf, f.offset_bits, f.width_bits, values[i]);
  }
  return buf;
}

std::vector<uint64_t> layout_decode(const ContextLayout& layout,
                                    const std::vector<uint8_t>& bytes) {
  if (bytes.size() < layout.bytes())
    throw PoiseError("context decode: truncated context stack");
  std::vector<uint64_t> out(layout.fields.size(), 0);
  for (size_t i = 0; i < layout.fields.size(); ++i)
    out[i] = get_bits(bytes, layout.fields[i].offset_bits, layout.fields[i].width_bits);
  return out;
}

ResourceModel parse_resource_model(const std::string& text) {
  ResourceModel rm;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank)
        throw PoiseError("resource model line " + std::to_string(lineno) +
                         ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    uint64_t v = std::stoull(val);
    if (key == "stages") rm.stages = static_cast<uint32_t>(v);
    else if (key == "tables_per_stage") rm.tables_per_stage = static_cast<uint32_t>(v);
    else if (key == "sram_bytes") rm.sram_bytes = v;
    else if (key == "tcam_bytes") rm.tcam_bytes = v;
    else if (key == "alus_per_stage") rm.alus_per_stage = static_cast<uint32_t>(v);
    else if (key == "max_recirculations") rm.max_recirculations = static_cast<uint32_t>(v);
    else throw PoiseError("resource model: unknown key '" + key + "'");
  }
  return rm;
}

}  // namespace poise

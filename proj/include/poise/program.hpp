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
// The compiled switch program: context header layout, per-stage ALU ops and
// match/action tables, monitor registers, decision logic, and the resource
// model it was packed against. Serializes to the versioned program-json the
// simulator consumes.

#ifndef POISE_PROGRAM_HPP_
#define POISE_PROGRAM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "poise/ast.hpp"

namespace poise {

inline constexpr const char* kProgramSchema = "poise-program/1";

// Transport-layer protocol number marking context packets (IANA experimental).
inline constexpr uint8_t kContextProtocol = 253;

// ---------------------------------------------------------------------------
// Resource model (defaults are the evaluated low-end switch)

struct ResourceModel {
  uint32_t stages = 5;             // usable stages S
  uint32_t tables_per_stage = 8;   // T
  uint64_t sram_bytes = 6'000'000; // holds exactly 1.2M 32-bit range checks
  uint64_t tcam_bytes = 1'048'576;
  uint32_t alus_per_stage = 16;
  uint32_t max_recirculations = 8; // Rmax
};

// Parses a toml-like key=value file body ("stages = 5\n..."). Unknown keys
// are errors; missing keys keep defaults.
ResourceModel parse_resource_model(const std::string& text);

// ---------------------------------------------------------------------------
// Context header layout

struct LayoutField {
  std::string name;
  std::string group;  // header group for rendering
  uint32_t offset_bits = 0;
  uint32_t width_bits = 32;
  bool is_signed = false;
};

struct ContextLayout {
  std::vector<LayoutField> fields;  // order = first use in the policy program
  uint32_t total_bits = 0;
  uint8_t protocol_id = kContextProtocol;

  uint32_t bytes() const { return (total_bits + 7) / 8; }
  const LayoutField* find(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Tables

enum class MatchKind : uint8_t { kExact, kLpm, kTernary, kRange };

const char* match_kind_name(MatchKind k);

struct TableEntry {
  uint64_t key = 0;       // exact/lpm/ternary key; range: the constant operand
  uint8_t prefix_len = 0; // lpm
  uint64_t mask = 0;      // ternary
  CmpOp cmp = CmpOp::kEq; // range
  uint32_t bit = 0;       // condition bit set on hit
};

struct TableSpec {
  uint32_t id = 0;
  std::string name;
  std::string field;
  bool field_is_builtin = false;
  bool signed_cmp = false;  // range tables on signed fields
  MatchKind kind = MatchKind::kExact;
  uint32_t key_bits = 32;
  std::vector<TableEntry> entries;
  uint32_t stage = 0;
  uint32_t round = 0;

  bool uses_tcam() const { return kind == MatchKind::kTernary; }
  // Exact/lpm/range entries charge SRAM: key bytes + one action byte,
  // rounded to whole bytes. Ternary charges TCAM at 2x key bytes (key+mask).
  uint64_t entry_cost_bytes() const {
    uint64_t key_bytes = (key_bits + 7) / 8;
    return uses_tcam() ? 2 * key_bytes : (key_bits + 8 + 7) / 8;
  }
  uint64_t memory_bytes() const { return entries.size() * entry_cost_bytes(); }
};

// ---------------------------------------------------------------------------
// ALU ops

enum class AluOpKind : uint8_t { kAdd, kSub, kMul, kShr, kAndMask, kCmp };

struct AluOperand {
  enum class Kind : uint8_t { kConst, kField, kMonitor, kOp } kind = Kind::kConst;
  uint64_t value = 0;   // kConst
  std::string name;     // kField / kMonitor
  uint32_t op = 0;      // kOp: index of an earlier AluOp
};

struct AluOp {
  AluOpKind kind = AluOpKind::kAdd;
  AluOperand a, b;        // b unused for kShr/kAndMask? (shift/mask amount in b.value)
  CmpOp cmp = CmpOp::kEq; // kCmp
  bool signed_cmp = false;
  uint32_t out_bit = kNoBit;  // kCmp writes a condition bit
  uint32_t stage = 0;
  uint32_t round = 0;

  static constexpr uint32_t kNoBit = 0xFFFFFFFF;
};

// ---------------------------------------------------------------------------
// Conditions and decision logic

// Boolean expression over condition bits produced by tables and ALU compares.
struct CondExpr {
  enum class Kind : uint8_t { kTrue, kBit, kNot, kAnd, kOr } kind = Kind::kTrue;
  uint32_t bit = 0;
  std::vector<CondExpr> kids;

  static CondExpr bit_ref(uint32_t b) {
    CondExpr c;
    c.kind = Kind::kBit;
    c.bit = b;
    return c;
  }
};

struct DecisionNode {
  enum class Kind : uint8_t { kAction, kIf } kind = Kind::kAction;
  // kAction
  Action action;
  uint32_t branch_id = 0;
  // kIf
  CondExpr cond;
  std::vector<DecisionNode> then_branch;
  std::vector<DecisionNode> else_branch;  // empty: fall through
};

// ---------------------------------------------------------------------------
// Monitors

struct MonitorSpec {
  std::string id;
  uint32_t reg = 0;        // value register index; timestamp register pairs it
  uint32_t width = 32;
  CondExpr pred;           // update predicate over condition bits
  uint64_t timeout_ns = kDefaultMonitorWindowNs;
  uint32_t stage = 0;
  uint32_t round = 0;
};

// ---------------------------------------------------------------------------
// Program

struct MemorySummary {
  uint64_t sram_bytes = 0;
  uint64_t tcam_bytes = 0;
  uint32_t tables = 0;
  uint32_t alu_ops = 0;
  uint32_t stages_used = 0;
};

struct SwitchProgram {
  ContextLayout layout;
  std::vector<std::string> string_table;  // interned id = index + 1
  std::vector<std::string> ports;
  std::vector<TableSpec> tables;
  std::vector<AluOp> alu_ops;             // topologically ordered
  std::vector<MonitorSpec> monitors;
  std::vector<DecisionNode> decision;     // parallel list, first action wins
  Action default_action;                  // default-deny
  uint32_t cond_bits = 0;
  uint32_t context_types = 0;             // distinct context fields
  uint32_t rounds = 1;                    // recirculation count r
  ResourceModel model;
  MemorySummary memory;

  std::string to_json_text() const;       // versioned, deterministic
  static SwitchProgram from_json_text(const std::string& text);
};

// Context header byte encoding: field bits laid out big-endian (MSB first)
// at the layout offsets, right after the transport headers in the modeled
// packet. Throws PoiseError on missing fields or width overflow.
std::vector<uint8_t> layout_encode(const ContextLayout& layout,
                                   const std::vector<uint64_t>& values);
std::vector<uint64_t> layout_decode(const ContextLayout& layout,
                                    const std::vector<uint8_t>& bytes);

}  // namespace poise

#endif  // POISE_PROGRAM_HPP_

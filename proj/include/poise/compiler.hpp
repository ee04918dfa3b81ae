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

#ifndef POISE_COMPILER_HPP_
#define POISE_COMPILER_HPP_

#include "poise/ast.hpp"
#include "poise/program.hpp"

namespace poise {

// Pre-placement IR: tables, ALU ops, monitors and decision logic lowered
// from a validated policy, before optimization and stage allocation.
struct LoweredIr {
  ContextLayout layout;
  std::vector<std::string> string_table;
  std::vector<std::string> ports;
  std::vector<TableSpec> tables;
  std::vector<AluOp> alu_ops;
  std::vector<MonitorSpec> monitors;
  std::vector<DecisionNode> decision;
  uint32_t cond_bits = 0;
  uint32_t context_types = 0;
};

// Lowers expressions to 32-bit ALU ops (division/modulo only as power-of-two
// shift/mask rewrites), membership predicates to match/action tables with
// selected match kinds, bare field-vs-constant comparisons to range-check
// entries, and monitors to register specs.
LoweredIr lower(const ValidatedPolicy& vp);

// Table deduplication (identical field/kind/key set) and table merge (small
// exact tables on one field with disjoint keys; range tables per field).
// Verdict-preserving: condition bits are remapped, never dropped.
void optimize(LoweredIr& ir);

// Packs tables and ALU ops into (round, stage) slots first-fit by dependency
// order under the resource model, accounts SRAM/TCAM, and fixes the
// recirculation count r = ceil(context_types / stages).
SwitchProgram allocate(LoweredIr ir, const ResourceModel& rm);

// Conservative pairwise overlap check between branches with different
// terminal actions, over an interval abstraction per numeric variable and a
// set abstraction per membership list. Throws ConflictError.
void detect_conflicts(const ValidatedPolicy& vp);

// Deterministic human-readable P4-like rendering of an allocated program.
std::string render(const SwitchProgram& program);

struct CompileOptions {
  ResourceModel model;
  bool check_conflicts = true;
  bool run_optimizer = true;
};

// Full pipeline: detect_conflicts -> lower -> optimize -> allocate.
SwitchProgram compile_policy(const ValidatedPolicy& vp, const CompileOptions& opts = {});

}  // namespace poise

#endif  // POISE_COMPILER_HPP_

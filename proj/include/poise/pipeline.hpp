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
// Executes a compiled SwitchProgram over a context packet: table lookups,
// staged ALU ops, monitor updates/reads, and the decision walk.

#ifndef POISE_PIPELINE_HPP_
#define POISE_PIPELINE_HPP_

#include <optional>

#include "poise/packet.hpp"
#include "poise/program.hpp"

namespace poise {

// Per-monitor value + last-event-timestamp register pair. A read past the
// timeout yields 0 and resets the stored value; an update past the timeout
// starts a fresh window at 1.
class MonitorBank {
 public:
  MonitorBank() = default;
  explicit MonitorBank(size_t count) : regs_(count) {}

  uint32_t read(size_t i, TimePs now) {
    Reg& r = regs_[i];
    if (r.armed && now - r.last_event > r_timeout(i)) {
      r.value = 0;
      r.armed = false;
    }
    return r.value;
  }
  void bump(size_t i, TimePs now) {
    Reg& r = regs_[i];
    if (r.armed && now - r.last_event > r_timeout(i)) r.value = 0;
    ++r.value;
    r.last_event = now;
    r.armed = true;
  }
  void bind(const SwitchProgram* prog) { prog_ = prog; regs_.assign(prog->monitors.size(), {}); }
  size_t size() const { return regs_.size(); }

 private:
  struct Reg {
    uint32_t value = 0;
    TimePs last_event = 0;
    bool armed = false;  // any event recorded in the current window
  };
  TimePs r_timeout(size_t i) const {
    return prog_ ? prog_->monitors[i].timeout_ns * 1000 : 0;
  }
  std::vector<Reg> regs_;
  const SwitchProgram* prog_ = nullptr;
};

// Decision on a context packet. `matched` is false when no branch fired and
// the default action applies.
struct EvalResult {
  Action action;
  uint32_t branch_id = 0xFFFFFFFF;
  bool matched = false;
};

// Built-in header values fed to tables/ALU next to the context values.
struct BuiltinView {
  uint32_t sip = 0;
  uint32_t dip = 0;
  uint16_t sport = 0;
  uint8_t proto = 0;
};

// Runs the compiled rounds over the given context field values (layout
// order). When `update_monitors` is set (context packets), monitors whose
// predicates match are bumped before any monitor-reading ALU op runs.
EvalResult eval_policy(const SwitchProgram& prog, const std::vector<uint64_t>& ctx_values,
                       const BuiltinView& builtins, MonitorBank* monitors, TimePs now,
                       bool update_monitors);

bool eval_cond(const CondExpr& c, const std::vector<bool>& bits);

}  // namespace poise

#endif  // POISE_PIPELINE_HPP_

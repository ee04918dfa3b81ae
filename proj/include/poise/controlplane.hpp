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
// The Poise switch-local control plane (delayed FullConn installs) and the
// OpenFlow-style baseline controller used for the comparison experiments.

#ifndef POISE_CONTROLPLANE_HPP_
#define POISE_CONTROLPLANE_HPP_

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poise/packet.hpp"
#include "poise/rng.hpp"
#include "poise/switch_state.hpp"

namespace poise {

struct ControlPlaneConfig {
  bool instantaneous = false;     // ready-at == request time (oracle tests)
  double insert_median_ms = 1.0;  // lognormal median
  double insert_sigma = 0.5;
};

struct PendingInsert {
  FlowKey key;
  uint32_t idx = 0;
  CompactDecision decision;
  TimePs ready_at = 0;
};

// Delayed FullConn installs. At most one pending insert per FlowKey; a
// repeated request coalesces and refreshes the stored decision so the
// install never resurrects a stale verdict.
class PoiseControlPlane {
 public:
  PoiseControlPlane(const ControlPlaneConfig& cfg, uint64_t seed)
      : cfg_(cfg), rng_(seed, "cp-insert") {}

  enum class RequestOutcome : uint8_t { kScheduled, kCoalesced, kRefusedPool };

  struct RequestResult {
    RequestOutcome outcome;
    TimePs ready_at = 0;  // kScheduled only
  };

  RequestResult request_insert(SwitchState& state, const FlowKey& key,
                               CompactDecision dec, TimePs now);

  // Installs every pending insert with ready_at <= now; returns the count.
  uint32_t commit_ready(SwitchState& state, TimePs now);

  // Earliest outstanding ready-at, for event scheduling.
  std::optional<TimePs> next_ready() const;

  size_t pending_count() const { return pending_.size(); }
  TimePs expected_insert_ps() const {
    return cfg_.instantaneous ? 0 : ps_from_ns(cfg_.insert_median_ms * 1e6);
  }

  uint64_t requests = 0;
  uint64_t coalesced = 0;
  uint64_t committed = 0;
  uint64_t refused_pool = 0;

 private:
  ControlPlaneConfig cfg_;
  Rng rng_;
  std::map<uint64_t, PendingInsert> pending_;  // packed FlowKey -> insert
};

// ---------------------------------------------------------------------------
// Baseline OpenFlow-style controller

struct BaselineConfig {
  double service_rate = 10000.0;  // PacketIn events per second
  uint32_t queue_capacity = 50000;
  double rtt_median_ms = 5.0;  // FlowMod round trip
  double rtt_sigma = 0.3;
  double conn_timeout_s = 1.0;
};

// FIFO service queue in front of a software controller. Every new flow (or
// context change) raises a PacketIn; the decision reaches the switch one
// service slot plus one rule-install RTT later.
class BaselineController {
 public:
  BaselineController(const BaselineConfig& cfg, uint64_t seed)
      : cfg_(cfg), rng_(seed, "baseline-rtt") {}

  struct PacketIn {
    FlowKey flow;
    std::vector<uint64_t> ctx_values;
    uint32_t dip = 0;
    TimePs enqueued_at = 0;
  };

  // Returns false on queue overflow (the connection attempt is lost).
  bool enqueue(PacketIn ev, TimePs now);
  bool queue_empty() const { return queue_.empty(); }
  size_t queue_size() const { return queue_.size(); }
  PacketIn pop_front();

  TimePs service_interval_ps() const {
    return static_cast<TimePs>(1e12 / cfg_.service_rate);
  }
  TimePs sample_rtt_ps() {
    return ps_from_ns(rng_.lognormal_median(cfg_.rtt_median_ms * 1e6, cfg_.rtt_sigma));
  }
  TimePs conn_timeout_ps() const { return static_cast<TimePs>(cfg_.conn_timeout_s * 1e12); }

  struct Rule {
    CompactDecision dec;
    TimePs installed_at = 0;
  };
  std::map<uint64_t, Rule> rules;  // packed FlowKey -> installed rule

  uint64_t enqueued = 0;
  uint64_t queue_drops = 0;
  uint64_t serviced = 0;
  uint64_t installed = 0;

 private:
  BaselineConfig cfg_;
  Rng rng_;
  std::deque<PacketIn> queue_;
};

// ---------------------------------------------------------------------------
// Logging sink

struct LogRecord {
  TimePs t = 0;
  FlowKey flow;
  uint32_t dip = 0;
  uint32_t branch_id = 0;
};

// Collects packets with a Log verdict; optionally mirrors them to a JSON
// Lines file at flush time.
class LoggerSink {
 public:
  void append(const LogRecord& r) { records_.push_back(r); }
  const std::vector<LogRecord>& records() const { return records_; }
  void write_jsonl(const std::string& path) const;

 private:
  std::vector<LogRecord> records_;
};

}  // namespace poise

#endif  // POISE_CONTROLPLANE_HPP_

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
// Runtime switch primitive state: the FullConn key/value store with its
// decision register array R, the CRC-16 indexed Cache, the blacklist Bloom
// filter, and per-IP active-connection counters.

#ifndef POISE_SWITCH_STATE_HPP_
#define POISE_SWITCH_STATE_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "poise/bloom.hpp"
#include "poise/packet.hpp"
#include "poise/program.hpp"
#include "poise/rng.hpp"

namespace poise {

// A decision compact enough for the 1M-entry register array R.
struct CompactDecision {
  ActionKind kind = ActionKind::kDrop;
  uint16_t port = kNoPort;   // index into SwitchProgram::ports for fwd
  uint32_t branch = 0xFFFFFFFF;

  static constexpr uint16_t kNoPort = 0xFFFF;
  bool is_drop() const { return kind == ActionKind::kDrop; }
};

struct DataplaneConfig {
  uint32_t fullconn_capacity = 1'048'576;  // C
  uint32_t per_ip_cap = 1000;
  uint32_t bloom_bits = 65536;
  uint32_t bloom_hashes = 3;
  double replace_prob = 0.5;       // opportunistic cross-sip replacement p
  double idle_timeout_s = 60.0;
  double scan_interval_s = 1.0;
};

enum class CacheOutcome : uint8_t {
  kWroteEmpty,
  kRefreshedSame,     // same FlowKey, decision refreshed in place
  kReplacedSameSip,   // collision from the same source IP: immediate replace
  kReplacedCrossSip,  // cross-sip collision, replacement won the coin toss
  kDeferred,          // cross-sip collision, old entry kept
};

class SwitchState {
 public:
  SwitchState(const DataplaneConfig& cfg, uint64_t seed);

  // ---- FullConn + R ----
  std::optional<uint32_t> fullconn_find(const FlowKey& key) const;
  bool fullconn_contains(const FlowKey& key) const { return fullconn_find(key).has_value(); }
  // Installs key -> idx with R[idx] = dec. idx must come from alloc_index().
  void fullconn_install(const FlowKey& key, uint32_t idx, CompactDecision dec, TimePs now);
  void touch(const FlowKey& key, TimePs now);
  CompactDecision read_register(uint32_t idx) const { return regs_[idx]; }
  void write_register(uint32_t idx, CompactDecision dec) { regs_[idx] = dec; }
  size_t fullconn_size() const { return fullconn_.size(); }

  // Free-index pool. nullopt when all C indices are live or pending.
  std::optional<uint32_t> alloc_index();
  void release_index(uint32_t idx) { free_.push_back(idx); }

  // Removes entries idle past the threshold; returns freed count.
  // Index goes back to the pool, the per-IP count drops.
  uint32_t expire_idle(TimePs now, TimePs idle_threshold);

  // ---- per-IP admission (total-residency defense) ----
  bool admit_connection(uint32_t sip);
  void release_connection(uint32_t sip);
  uint32_t active_connections(uint32_t sip) const;

  // ---- Cache ----
  struct CacheSlot {
    FlowKey key;
    CompactDecision dec;
    bool valid = false;
  };
  static constexpr uint32_t kCacheSlots = 65536;  // CRC-16 output size

  // Tuple-exact lookup: a hash collision with a different tuple is a miss.
  std::optional<CompactDecision> cache_find(const FlowKey& key) const;
  // Eviction rules from the cache-eviction defense; evicted Drop decisions
  // feed the blacklist Bloom filter.
  CacheOutcome cache_insert(const FlowKey& key, CompactDecision dec);
  // Overwrites the slot only if it holds this exact tuple (context refresh).
  void cache_refresh_if_same(const FlowKey& key, CompactDecision dec);
  const CacheSlot& cache_slot(uint32_t idx) const { return cache_[idx]; }
  uint32_t cache_occupancy() const;

  // ---- blacklist Bloom filter ----
  BloomFilter& bloom() { return bf_; }
  const BloomFilter& bloom() const { return bf_; }
  void bloom_add(uint32_t sip);
  bool bloom_query_is_fp(uint32_t sip) const;  // hit without a matching add
  void bloom_clear();

  const DataplaneConfig& config() const { return cfg_; }

  // Eviction statistics for the defense experiments.
  uint64_t evictions_same_sip = 0;
  uint64_t evictions_cross_sip = 0;
  uint64_t deferred_inserts = 0;
  uint64_t bloom_adds = 0;

 private:
  struct FcEntry {
    uint32_t idx;
    TimePs last_active;
  };

  DataplaneConfig cfg_;
  std::unordered_map<uint64_t, FcEntry> fullconn_;
  std::vector<CompactDecision> regs_;
  std::vector<uint32_t> free_;
  std::vector<CacheSlot> cache_;
  BloomFilter bf_;
  std::unordered_set<uint32_t> bf_shadow_;  // ground truth for FP accounting
  std::unordered_map<uint32_t, uint32_t> per_ip_;
  Rng replace_rng_;
};

}  // namespace poise

#endif  // POISE_SWITCH_STATE_HPP_

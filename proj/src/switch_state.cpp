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

#include "poise/switch_state.hpp"

#include <algorithm>

namespace poise {

SwitchState::SwitchState(const DataplaneConfig& cfg, uint64_t seed)
    : cfg_(cfg),
      regs_(cfg.fullconn_capacity),
      cache_(kCacheSlots),
      bf_(cfg.bloom_bits, cfg.bloom_hashes),
      replace_rng_(seed, "cache-replace") {
  free_.reserve(cfg.fullconn_capacity);
  for (uint32_t i = cfg.fullconn_capacity; i > 0; --i) free_.push_back(i - 1);
}

std::optional<uint32_t> SwitchState::fullconn_find(const FlowKey& key) const {
  auto it = fullconn_.find(key.packed());
  if (it == fullconn_.end()) return std::nullopt;
  return it->second.idx;
}

void SwitchState::fullconn_install(const FlowKey& key, uint32_t idx, CompactDecision dec,
                                   TimePs now) {
  regs_[idx] = dec;
  fullconn_[key.packed()] = FcEntry{idx, now};
}

void SwitchState::touch(const FlowKey& key, TimePs now) {
  auto it = fullconn_.find(key.packed());
  if (it != fullconn_.end()) it->second.last_active = now;
}

std::optional<uint32_t> SwitchState::alloc_index() {
  if (free_.empty()) return std::nullopt;
  uint32_t idx = free_.back();
  free_.pop_back();
  return idx;
}

uint32_t SwitchState::expire_idle(TimePs now, TimePs idle_threshold) {
  std::vector<uint64_t> victims;
  for (const auto& [packed, entry] : fullconn_)
    if (now - entry.last_active > idle_threshold) victims.push_back(packed);
  // Stable release order keeps the free pool deterministic.
  std::sort(victims.begin(), victims.end());
  for (uint64_t packed : victims) {
    auto it = fullconn_.find(packed);
    release_index(it->second.idx);
    release_connection(static_cast<uint32_t>(packed >> 24));
    fullconn_.erase(it);
  }
  return static_cast<uint32_t>(victims.size());
}

bool SwitchState::admit_connection(uint32_t sip) {
  uint32_t& n = per_ip_[sip];
  if (n >= cfg_.per_ip_cap) return false;
  ++n;
  return true;
}

void SwitchState::release_connection(uint32_t sip) {
  auto it = per_ip_.find(sip);
  if (it == per_ip_.end()) return;
  if (it->second > 0) --it->second;
  if (it->second == 0) per_ip_.erase(it);
}

uint32_t SwitchState::active_connections(uint32_t sip) const {
  auto it = per_ip_.find(sip);
  return it == per_ip_.end() ? 0 : it->second;
}

std::optional<CompactDecision> SwitchState::cache_find(const FlowKey& key) const {
  const CacheSlot& slot = cache_[crc16_of(key)];
  if (!slot.valid || !(slot.key == key)) return std::nullopt;
  return slot.dec;
}

CacheOutcome SwitchState::cache_insert(const FlowKey& key, CompactDecision dec) {
  CacheSlot& slot = cache_[crc16_of(key)];
  if (!slot.valid) {
    slot.key = key;
    slot.dec = dec;
    slot.valid = true;
    return CacheOutcome::kWroteEmpty;
  }
  if (slot.key == key) {
    slot.dec = dec;
    return CacheOutcome::kRefreshedSame;
  }
  if (slot.key.sip == key.sip) {
    // Same source IP: immediate replacement.
    if (slot.dec.is_drop()) bloom_add(slot.key.sip);
    slot.key = key;
    slot.dec = dec;
    ++evictions_same_sip;
    return CacheOutcome::kReplacedSameSip;
  }
  if (replace_rng_.bernoulli(cfg_.replace_prob)) {
    if (slot.dec.is_drop()) bloom_add(slot.key.sip);
    slot.key = key;
    slot.dec = dec;
    ++evictions_cross_sip;
    return CacheOutcome::kReplacedCrossSip;
  }
  ++deferred_inserts;
  return CacheOutcome::kDeferred;
}

void SwitchState::cache_refresh_if_same(const FlowKey& key, CompactDecision dec) {
  CacheSlot& slot = cache_[crc16_of(key)];
  if (slot.valid && slot.key == key) slot.dec = dec;
}

uint32_t SwitchState::cache_occupancy() const {
  uint32_t n = 0;
  for (const auto& s : cache_)
    if (s.valid) ++n;
  return n;
}

void SwitchState::bloom_add(uint32_t sip) {
  bf_.add(sip);
  bf_shadow_.insert(sip);
  ++bloom_adds;
}

bool SwitchState::bloom_query_is_fp(uint32_t sip) const {
  return bf_.query(sip) && bf_shadow_.find(sip) == bf_shadow_.end();
}

void SwitchState::bloom_clear() {
  bf_.clear();
  bf_shadow_.clear();
}

}  // namespace poise

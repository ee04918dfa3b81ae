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

#ifndef POISE_PACKET_HPP_
#define POISE_PACKET_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "poise/crc16.hpp"

namespace poise {

// Simulated time in integer picoseconds: 100.4 ns is exact and event
// ordering stays bit-deterministic.
using TimePs = uint64_t;

inline constexpr TimePs operator""_ns(unsigned long long v) { return v * 1000; }
inline constexpr TimePs operator""_us(unsigned long long v) { return v * 1'000'000; }
inline constexpr TimePs operator""_ms(unsigned long long v) { return v * 1'000'000'000; }
inline constexpr TimePs operator""_s(unsigned long long v) { return v * 1'000'000'000'000ull; }

inline constexpr TimePs ps_from_ns(double ns) {
  return static_cast<TimePs>(ns * 1000.0 + 0.5);
}
inline constexpr double ns_from_ps(TimePs ps) { return static_cast<double>(ps) / 1000.0; }

// Connection identity: source IP/port and protocol. Destination fields are
// deliberately excluded (7 bytes total).
struct FlowKey {
  uint32_t sip = 0;
  uint16_t sport = 0;
  uint8_t proto = 0;

  std::array<uint8_t, 7> bytes() const {
    return {static_cast<uint8_t>(sip >> 24), static_cast<uint8_t>(sip >> 16),
            static_cast<uint8_t>(sip >> 8),  static_cast<uint8_t>(sip),
            static_cast<uint8_t>(sport >> 8), static_cast<uint8_t>(sport),
            proto};
  }
  uint64_t packed() const {
    return (static_cast<uint64_t>(sip) << 24) | (static_cast<uint64_t>(sport) << 8) |
           proto;
  }
  friend bool operator==(const FlowKey& a, const FlowKey& b) {
    return a.packed() == b.packed();
  }
  friend bool operator<(const FlowKey& a, const FlowKey& b) {
    return a.packed() < b.packed();
  }
};

inline uint16_t crc16_of(const FlowKey& k) {
  auto b = k.bytes();
  return crc16_ccitt(b.data(), b.size());
}

enum class PacketKind : uint8_t { kContext, kData };

struct Packet {
  PacketKind kind = PacketKind::kData;
  FlowKey flow;
  uint32_t dip = 0;
  uint16_t dport = 0;
  // Context packets: the encoded context header stack (layout order,
  // big-endian bit packing).
  std::vector<uint8_t> ctx_bytes;
  uint32_t payload_bytes = 0;
  uint32_t wire_bytes = 0;
  uint32_t recirc_count = 0;
};

// Final verdicts; Recirculate never escapes the simulator.
enum class VerdictKind : uint8_t { kDrop, kFwd, kFlood, kLog, kRecirculate };

struct Verdict {
  VerdictKind kind = VerdictKind::kDrop;
  uint32_t port = 0;        // kFwd: resolved simulator port
  uint32_t branch_id = 0;   // matched policy branch, for logging
  TimePs recirc_delay = 0;  // kRecirculate
};

}  // namespace poise

#endif  // POISE_PACKET_HPP_

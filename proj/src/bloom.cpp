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

#include "poise/bloom.hpp"

#include <bit>

#include "poise/crc16.hpp"

namespace poise {

BloomFilter::BloomFilter(uint32_t bits, uint32_t hashes)
    : bits_(bits), hashes_(hashes), words_((bits + 63) / 64, 0) {}

uint32_t BloomFilter::index(uint32_t sip, uint32_t salt) const {
  // Each hash is the CRC-16 of (salt byte || sip), mixed with a second CRC
  // of the byte-rotated sip so filters larger than 2^16 stay usable.
  uint8_t buf[5] = {static_cast<uint8_t>(salt), static_cast<uint8_t>(sip >> 24),
                    static_cast<uint8_t>(sip >> 16), static_cast<uint8_t>(sip >> 8),
                    static_cast<uint8_t>(sip)};
  uint32_t h = crc16_ccitt(buf, sizeof(buf));
  if (bits_ > (1u << 16)) {
    uint8_t buf2[5] = {static_cast<uint8_t>(salt + 0x5A), buf[4], buf[1], buf[2], buf[3]};
    h |= static_cast<uint32_t>(crc16_ccitt(buf2, sizeof(buf2))) << 16;
  }
  return h % bits_;
}

void BloomFilter::add(uint32_t sip) {
  for (uint32_t i = 0; i < hashes_; ++i) {
    uint32_t b = index(sip, i);
    words_[b >> 6] |= 1ull << (b & 63);
  }
}

bool BloomFilter::query(uint32_t sip) const {
  for (uint32_t i = 0; i < hashes_; ++i) {
    uint32_t b = index(sip, i);
    if ((words_[b >> 6] & (1ull << (b & 63))) == 0) return false;
  }
  return true;
}

void BloomFilter::clear() {
  for (auto& w : words_) w = 0;
}

uint64_t BloomFilter::popcount() const {
  uint64_t n = 0;
  for (uint64_t w : words_) n += static_cast<uint64_t>(std::popcount(w));
  return n;
}

}  // namespace poise

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

#ifndef POISE_BLOOM_HPP_
#define POISE_BLOOM_HPP_

#include <cstdint>
#include <vector>

namespace poise {

// Blacklist Bloom filter over source IPs: m bits, h salted CRC-derived hash
// functions. False positives only, never false negatives.
class BloomFilter {
 public:
  explicit BloomFilter(uint32_t bits = 65536, uint32_t hashes = 3);

  void add(uint32_t sip);
  bool query(uint32_t sip) const;
  void clear();

  uint32_t bit_count() const { return bits_; }
  uint32_t hash_count() const { return hashes_; }
  uint64_t popcount() const;

 private:
  uint32_t index(uint32_t sip, uint32_t salt) const;

  uint32_t bits_;
  uint32_t hashes_;
  std::vector<uint64_t> words_;
};

}  // namespace poise

#endif  // POISE_BLOOM_HPP_

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

#ifndef POISE_RNG_HPP_
#define POISE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace poise {

// Derives an independent substream seed so components (trace gen, cache
// replacement, control-plane latency, ...) never share a stream.
inline uint64_t substream_seed(uint64_t seed, std::string_view component) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (char c : component) {
    h ^= static_cast<uint8_t>(c);
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  Rng(uint64_t seed, std::string_view component) : gen_(substream_seed(seed, component)) {}

  uint64_t next_u64() { return gen_(); }
  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);
  }
  uint64_t uniform(uint64_t lo, uint64_t hi) {  // inclusive bounds
    return lo + gen_() % (hi - lo + 1);
  }
  bool bernoulli(double p) { return next_double() < p; }
  double exponential(double mean) {
    double u;
    do { u = next_double(); } while (u <= 0.0);
    return -mean * std::log(u);
  }
  double normal(double mu, double sigma) {
    double u1, u2;
    do { u1 = next_double(); } while (u1 <= 0.0);
    u2 = next_double();
    return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  // Lognormal parameterized by its median: exp(N(ln median, sigma)).
  double lognormal_median(double median, double sigma) {
    return std::exp(normal(std::log(median), sigma));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace poise

#endif  // POISE_RNG_HPP_

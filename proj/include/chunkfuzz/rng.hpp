/*
Copyright 2026 The chunkfuzz authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CHUNKFUZZ_RNG_HPP
#define CHUNKFUZZ_RNG_HPP

#include <cstdint>
#include <random>

namespace chunkfuzz {

// Deterministic RNG. Bounded draws are derived from the raw 64-bit stream
// directly (not via std::uniform_int_distribution, whose mapping is
// implementation-defined), so campaigns replay bit-exactly everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform in [0, bound). bound == 0 yields 0.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    // Lemire's multiply-shift with rejection.
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      __uint128_t m = static_cast<__uint128_t>(r) * bound;
      if (static_cast<uint64_t>(m) >= threshold) return static_cast<uint64_t>(m >> 64);
    }
  }

  size_t index(size_t size) { return static_cast<size_t>(below(size)); }

  // True with probability p (clamped to [0,1]).
  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return (next() >> 11) * 0x1.0p-53 < p;
  }

  uint8_t byte() { return static_cast<uint8_t>(next()); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace chunkfuzz

#endif  // CHUNKFUZZ_RNG_HPP

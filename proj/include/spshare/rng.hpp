// Copyright 2026 The spshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPSHARE_RNG_HPP
#define SPSHARE_RNG_HPP

#include <cstdint>

namespace spshare {

// Splittable counter generator (splitmix64 core). Every public API in this
// library takes an explicit 64-bit seed; derived streams are keyed off the
// construction seed, not the consumption state, so row/part streams are
// independent of how much the parent has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1) with 53 random bits
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // unbiased uniform in [0,n) via rejection
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint64_t threshold = (0 - static_cast<std::uint64_t>(n)) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return static_cast<std::uint32_t>(r % n);
    }
  }

  // independent substream keyed by (construction seed, stream index)
  Rng derive(std::uint64_t stream) const {
    return Rng(mix(seed_ ^ 0xD1B54A32D192ED03ULL, mix(stream, 0x8CB92BA72F3D8DD7ULL)));
  }

  std::uint64_t seed() const { return seed_; }

  // UniformRandomBitGenerator interface
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }
  result_type operator()() { return next_u64(); }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    return z ^ (z >> 33);
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace spshare

#endif  // SPSHARE_RNG_HPP

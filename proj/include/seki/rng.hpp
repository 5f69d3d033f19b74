// Copyright 2026 The SEKI Engine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEKI_RNG_HPP_
#define SEKI_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace seki {

// The one mixing function every random value in the engine derives from.
// Chosen for platform stability: identical output on every compiler/OS,
// unlike std::uniform_int_distribution.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic stream generator (SplitMix64 sequence). One master seed
// fans out to named substreams so adding a consumer to one stream never
// perturbs the draws of another.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t NextU64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform integer in [0, n). Rejection sampling keeps it exactly uniform.
  std::uint64_t NextBelow(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = NextU64();
      if (r >= threshold) return r % n;
    }
  }

  double NextDouble() {  // in [0, 1)
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Independent named substream keyed off the construction seed, not the
  // current position, so substreams are stable however many draws precede
  // their creation.
  SeededRng Substream(std::string_view name) const {
    return SeededRng(SplitMix64(seed_ ^ Fnv1a64(name)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace seki

#endif  // SEKI_RNG_HPP_

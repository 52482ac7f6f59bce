// Copyright 2026 The tetrisyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace tetrisyk {

/// Stream identifiers used to derive independent generators from one seed.
enum class Stream : std::uint64_t {
  kDisorder = 0x5359'4b00,
  kCircuit = 0x5445'5400,
  kShots = 0x5348'4f00,
  kNoise = 0x4e4f'4900,
  kTrace = 0x5452'4300,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable, splittable generator. Children derived with split() are
/// statistically independent of the parent and of each other, and depend
/// only on (key, child id), so task-level streams do not depend on
/// scheduling order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : key_(splitmix64(seed)) { reseed(); }

  Rng split(std::uint64_t child) const {
    Rng r;
    r.key_ = splitmix64(key_ ^ splitmix64(child + 0x632be59bd9b4e019ULL));
    r.reseed();
    return r;
  }
  Rng split(Stream s) const { return split(static_cast<std::uint64_t>(s)); }
  Rng split(Stream s, std::uint64_t child) const { return split(s).split(child); }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  std::uint64_t key() const { return key_; }

 private:
  void reseed() {
    std::uint64_t s = key_;
    std::uint32_t words[8];
    for (auto& w : words) {
      s = splitmix64(s);
      w = static_cast<std::uint32_t>(s >> 32);
    }
    std::seed_seq seq(std::begin(words), std::end(words));
    engine_.seed(seq);
  }

  std::uint64_t key_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace tetrisyk

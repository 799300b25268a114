// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace packconv {

/// Deterministic sampler for verification runs.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms vary by
/// library), so bounded draws use rejection sampling on raw engine output to
/// keep reports identical across toolchains.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one trial of a seeded run.
  static Sampler for_trial(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 finalizer over (seed, trial)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Sampler(z ^ (z >> 31));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
    std::uint64_t draw = next();
    while (draw >= limit) draw = next();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
  }

  bool coin() { return (next() >> 63) != 0; }

  std::vector<std::int64_t> values(std::size_t count, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out(count);
    for (auto& v : out) v = uniform(lo, hi);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace packconv

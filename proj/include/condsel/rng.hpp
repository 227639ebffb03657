/* Copyright 2026 The Condsel Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef CONDSEL_RNG_HPP_
#define CONDSEL_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace condsel {

// Counter-based generator: draw i of stream `key` is
//   splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15)
// i.e. SplitMix64 evaluated at an explicit counter. Every value is a pure
// function of (key, counter), so streams are reproducible in any language that
// has 64-bit unsigned wraparound. Derived distributions below are defined
// exactly (no std:: distributions, whose algorithms are implementation-defined).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t NextU64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double Uniform() noexcept;

  /// Uniform on [lo, hi).
  double Uniform(double lo, double hi) noexcept { return lo + (hi - lo) * Uniform(); }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t Below(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller (cosine branch only, two uniforms per draw).
  double Normal() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

std::uint64_t Mix64(std::uint64_t z) noexcept;

/// FNV-1a over bytes; used to fold identifiers into stream keys.
std::uint64_t HashString(std::string_view s) noexcept;

/// Order-dependent combination of stream-key components.
std::uint64_t CombineKey(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace condsel

#endif  // CONDSEL_RNG_HPP_

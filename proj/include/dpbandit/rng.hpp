// Copyright 2026 The dpbandit Authors
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

#pragma once

#include <cstdint>
#include <limits>

namespace dpbandit {

/// Tags that keep environment and policy randomness on disjoint substreams.
enum class StreamPurpose : std::uint64_t {
  kReward = 1,
  kPolicyNoise = 2,
  kVerify = 3,
};

namespace detail {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_in(std::uint64_t key, std::uint64_t value) {
  return splitmix64(key ^ splitmix64(value + kGolden));
}

}  // namespace detail

/// Derives a 64-bit key for a run from the experiment seed and the run's
/// position. Used as the root of every per-round substream of that run.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b) {
  return detail::mix_in(detail::mix_in(detail::splitmix64(seed), a), b);
}

/// Counter-based random stream identified by (key, index, purpose).
///
/// The n-th output is a pure function of the stream id and n, so a stream can
/// be recreated anywhere (any thread, any order) and yields the same values.
/// Satisfies UniformRandomBitGenerator, so it plugs into <random>
/// distributions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  constexpr RngStream(std::uint64_t key, std::uint64_t index,
                      StreamPurpose purpose)
      : base_(detail::mix_in(detail::mix_in(key, index),
                             static_cast<std::uint64_t>(purpose))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    return detail::splitmix64(base_ + detail::kGolden * ++counter_);
  }

  /// Uniform double strictly inside (0, 1).
  double open_uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace dpbandit

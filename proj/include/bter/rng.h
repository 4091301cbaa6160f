// Copyright 2026 The BTER Toolkit Authors
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

#ifndef BTER_RNG_H_
#define BTER_RNG_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace bter {

// Stream identifiers. Each randomized stage derives its own stream from
// (seed, stream id, index), so work can be split across threads without
// changing the output.
enum class StreamId : std::uint64_t {
  kErdosRenyi = 1,
  kChungLuExact = 2,
  kChungLuFast = 3,
  kPhase1 = 10,
  kPhase2a = 11,
  kPhase2b = 12,
  kPhase2c = 13,
  kSpectrum = 20,
};

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t DeriveKey(std::uint64_t seed, StreamId stream,
                                  std::uint64_t index = 0) {
  std::uint64_t key = Mix64(seed ^ 0x6a09e667f3bcc909ULL);
  key = Mix64(key + static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ULL);
  return Mix64(key ^ (index + 0x3c6ef372fe94f82bULL));
}

// Counter-based generator: the i-th draw is Mix64(key + i * golden), a pure
// function of (key, i). Satisfies UniformRandomBitGenerator, but callers
// should prefer the member helpers, whose results do not depend on the
// standard library's distribution implementations.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t seed, StreamId stream, std::uint64_t index = 0)
      : key_(DeriveKey(seed, stream, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return Mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double UniformPositive() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) (Lemire's multiply-shift rejection).
  std::uint64_t Below(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bter

#endif  // BTER_RNG_H_

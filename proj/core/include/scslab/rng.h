// Copyright 2026 The scslab Authors
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

#ifndef SCSLAB_RNG_H_
#define SCSLAB_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace scslab {

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t MixSeed(std::uint64_t x);

// Child seed for a named stream under `root`. Streams with different tags or
// indices are statistically independent for all practical purposes.
std::uint64_t DeriveSeed(std::uint64_t root, std::string_view tag,
                         std::uint64_t index = 0);

// Deterministic random source. Uses std::mt19937_64 (whose output sequence the
// standard fixes) with hand-rolled range reduction, so draws are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, bound); bound >= 1.
  std::uint64_t UniformBelow(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double UniformUnit();

 private:
  std::mt19937_64 engine_;
};

// Radical inverse of `index` in `base`; coordinates of the Halton sequence.
double RadicalInverse(std::uint64_t index, std::uint32_t base);

// The i-th prime (0 -> 2); small table sufficient for Halton dimensions.
std::uint32_t NthPrime(std::size_t i);

}  // namespace scslab

#endif  // SCSLAB_RNG_H_

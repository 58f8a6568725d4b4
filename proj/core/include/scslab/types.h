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

#ifndef SCSLAB_TYPES_H_
#define SCSLAB_TYPES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "scslab/galois.h"
#include "scslab/probability.h"

// Method of types: empirical distributions of length-n strings.
namespace scslab {

struct TypeClass {
  std::vector<std::uint32_t> counts;  // occupation number per letter
  std::uint64_t size = 0;             // multinomial(n; counts)

  std::size_t length() const;
  // Entropy of the empirical distribution counts / n.
  double EmpiricalEntropy() const;
  // ln of p^n(x) for any x of this type; -inf if a used letter has p = 0.
  double LogSequenceProbability(const Pmf& p) const;

  friend bool operator==(const TypeClass&, const TypeClass&) = default;
};

// Exact multinomial coefficient; throws std::overflow_error past 2^63.
std::uint64_t Multinomial(std::span<const std::uint32_t> counts);

// All compositions of n into `alphabet_size` parts, in lexicographic order of
// the count vectors.
std::vector<TypeClass> EnumerateTypes(std::size_t n, std::size_t alphabet_size);

TypeClass TypeOf(std::span<const Residue> seq, std::uint32_t alphabet_size);

// Position of `seq` among the sequences of its type, in lexicographic order.
std::uint64_t RankInType(std::span<const Residue> seq,
                         std::uint32_t alphabet_size);
FieldVec UnrankInType(std::span<const std::uint32_t> counts, std::uint64_t rank);

}  // namespace scslab

#endif  // SCSLAB_TYPES_H_

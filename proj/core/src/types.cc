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

#include "scslab/types.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace scslab {
namespace {

void ComposeRecursive(std::size_t remaining, std::size_t slot,
                      std::vector<std::uint32_t>& counts,
                      std::vector<TypeClass>& out) {
  if (slot + 1 == counts.size()) {
    counts[slot] = static_cast<std::uint32_t>(remaining);
    out.push_back({counts, Multinomial(counts)});
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts[slot] = static_cast<std::uint32_t>(c);
    ComposeRecursive(remaining - c, slot + 1, counts, out);
  }
}

}  // namespace

std::size_t TypeClass::length() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

double TypeClass::EmpiricalEntropy() const {
  const double n = static_cast<double>(length());
  // Sum over sorted counts so that permuted types give bit-identical values.
  std::vector<std::uint32_t> sorted = counts;
  std::sort(sorted.begin(), sorted.end());
  double sum_clogc = 0.0;
  for (std::uint32_t c : sorted) sum_clogc += XLogX(static_cast<double>(c));
  return std::log(n) - sum_clogc / n;
}

double TypeClass::LogSequenceProbability(const Pmf& p) const {
  if (p.size() != counts.size()) throw std::invalid_argument("type/pmf alphabet mismatch");
  double lp = 0.0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] == 0) continue;
    if (p[a] <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += counts[a] * std::log(p[a]);
  }
  return lp;
}

std::uint64_t Multinomial(std::span<const std::uint32_t> counts) {
  // Product of binomials C(partial, c) built incrementally; each intermediate
  // value is an exact integer.
  __extension__ using U128 = unsigned __int128;
  U128 result = 1;
  std::uint64_t partial = 0;
  for (std::uint32_t c : counts) {
    for (std::uint32_t i = 1; i <= c; ++i) {
      ++partial;
      result = result * partial / i;
      if (result > std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("multinomial exceeds 2^63");
      }
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<TypeClass> EnumerateTypes(std::size_t n, std::size_t alphabet_size) {
  if (n == 0) throw std::invalid_argument("EnumerateTypes: n >= 1");
  if (alphabet_size == 0) throw std::invalid_argument("EnumerateTypes: empty alphabet");
  std::vector<TypeClass> out;
  std::vector<std::uint32_t> counts(alphabet_size, 0);
  ComposeRecursive(n, 0, counts, out);
  return out;
}

TypeClass TypeOf(std::span<const Residue> seq, std::uint32_t alphabet_size) {
  std::vector<std::uint32_t> counts(alphabet_size, 0);
  for (Residue s : seq) {
    if (s >= alphabet_size) throw std::out_of_range("symbol outside alphabet");
    ++counts[s];
  }
  const std::uint64_t size = Multinomial(counts);
  return {std::move(counts), size};
}

std::uint64_t RankInType(std::span<const Residue> seq,
                         std::uint32_t alphabet_size) {
  std::vector<std::uint32_t> remaining = TypeOf(seq, alphabet_size).counts;
  std::uint64_t rank = 0;
  for (Residue s : seq) {
    for (Residue smaller = 0; smaller < s; ++smaller) {
      if (remaining[smaller] == 0) continue;
      --remaining[smaller];
      rank += Multinomial(remaining);
      ++remaining[smaller];
    }
    --remaining[s];
  }
  return rank;
}

FieldVec UnrankInType(std::span<const std::uint32_t> counts, std::uint64_t rank) {
  std::vector<std::uint32_t> remaining(counts.begin(), counts.end());
  if (rank >= Multinomial(remaining)) throw std::out_of_range("rank >= type size");
  const std::size_t n = std::accumulate(remaining.begin(), remaining.end(), std::size_t{0});
  FieldVec seq(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < remaining.size(); ++s) {
      if (remaining[s] == 0) continue;
      --remaining[s];
      const std::uint64_t block = Multinomial(remaining);
      if (rank < block) {
        seq[t] = static_cast<Residue>(s);
        break;
      }
      rank -= block;
      ++remaining[s];
    }
  }
  return seq;
}

}  // namespace scslab

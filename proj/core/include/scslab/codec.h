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

#ifndef SCSLAB_CODEC_H_
#define SCSLAB_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "scslab/galois.h"
#include "scslab/probability.h"
#include "scslab/types.h"

namespace scslab {

// One entry of the code's type ordering and how many of its members fall in
// the decoding set.
struct TypeOrderEntry {
  TypeClass type;
  std::uint64_t members_in_decoding_set = 0;
};

// Fixed-to-fixed universal source code X^n -> X^m built from the type
// ordering: types by ascending empirical entropy (ties by lexicographic count
// vector), sequences lexicographically within a type. The first q^m
// sequences form the decoding set D and are mapped bijectively onto X^m; every
// later sequence maps to the codeword of the last element of D.
class UniversalCode {
 public:
  static constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

  // m is the largest integer with (m/n) ln q <= rate, capped at n. Throws
  // std::invalid_argument when that leaves m = 0 and std::length_error when
  // q^n exceeds kEnumerationCap.
  static UniversalCode Build(std::size_t n, double rate, std::uint32_t q);

  static std::size_t CodeLengthForRate(std::size_t n, double rate,
                                       std::uint32_t q);

  std::size_t block_length() const { return n_; }
  std::size_t code_length() const { return m_; }
  std::uint32_t alphabet_size() const { return field_.order(); }
  const PrimeField& field() const { return field_; }
  double rate() const { return rate_; }
  // (m/n) ln q.
  double realized_rate() const;
  // Whether the realized rate lies in [R - 1/n, R].
  bool RateWindowSatisfied() const;

  std::uint64_t source_space_size() const { return order_.size(); }
  std::uint64_t codeword_space_size() const { return decoder_.size(); }

  // Index-level maps (indices as in SequenceToIndex).
  std::uint64_t EncodeIndex(std::uint64_t x) const;
  std::uint64_t DecodeIndex(std::uint64_t y) const;
  std::uint64_t RankOf(std::uint64_t x) const { return rank_of_[x]; }
  std::uint64_t SequenceAtRank(std::uint64_t r) const { return order_[r]; }

  FieldVec Encode(std::span<const Residue> x) const;
  FieldVec Decode(std::span<const Residue> y) const;

  // x is in D iff the decoder reproduces it.
  bool InDecodingSet(std::uint64_t x) const {
    return decoder_[EncodeIndex(x)] == x;
  }

  const std::vector<TypeOrderEntry>& type_order() const { return type_order_; }

  // Copy with decoder entry `codeword` redirected to `sequence`. Used to build
  // deliberately broken systems for the verification suites.
  UniversalCode WithDecoderFault(std::uint64_t codeword,
                                 std::uint64_t sequence) const;

 private:
  UniversalCode(std::size_t n, std::size_t m, double rate, PrimeField field)
      : n_(n), m_(m), rate_(rate), field_(field) {}

  void RecountTypeMembership();

  std::size_t n_;
  std::size_t m_;
  double rate_;
  PrimeField field_;
  std::vector<std::uint32_t> rank_of_;  // x -> rank in the type ordering
  std::vector<std::uint32_t> order_;    // rank -> x
  std::vector<std::uint32_t> decoder_;  // codeword -> x
  std::vector<TypeOrderEntry> type_order_;
};

// Pr[X^n not in D] under p^n, summed per type class.
double ErrorProbabilityExact(const UniversalCode& code, const Pmf& source);

// min D(p' || p) over p' with H(p') >= rate - gamma. Zero when p itself is
// feasible; +infinity when the constraint cannot be met within supp(p). The
// minimizer lies on the tilted family p^s / Z(s), s in [0, 1], found by
// bisection on s.
double ErrorExponent(double rate, double gamma, const Pmf& source);

struct UniversalBoundReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double rate = 0.0;
  double gamma = 0.0;
  double error_probability = 0.0;
  double exponent = 0.0;
  double bound = 0.0;  // (n+1)^{|X|} exp(-n E)
  double delta_n = 0.0;  // (|X| ln(n+1) + 1) / n
  bool precondition_met = false;  // delta_n <= gamma
  bool holds = false;
};

UniversalBoundReport VerifyUniversalCodeBound(const UniversalCode& code,
                                            const Pmf& source, double gamma);

}  // namespace scslab

#endif  // SCSLAB_CODEC_H_

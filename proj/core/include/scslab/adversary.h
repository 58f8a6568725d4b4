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

#ifndef SCSLAB_ADVERSARY_H_
#define SCSLAB_ADVERSARY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "scslab/galois.h"
#include "scslab/probability.h"

namespace scslab {

// Memoryless side channel W: key letter -> observation letter. The
// observation depends on the key only, so the source stays independent of
// (K, Z) by construction.
class SideChannel {
 public:
  explicit SideChannel(ChannelMatrix w) : w_(std::move(w)) {}

  const ChannelMatrix& matrix() const { return w_; }
  std::size_t key_alphabet() const { return w_.inputs(); }
  std::size_t observation_alphabet() const { return w_.outputs(); }

  FieldVec Sample(std::span<const Residue> key, std::uint64_t seed) const {
    return SampleChannelOutput(w_, key, seed);
  }

  // Joint law of one (K, Z) pair.
  JointPmf KeyObservationJoint(const Pmf& key) const {
    return JointPmf::FromInputAndChannel(key, w_);
  }

 private:
  ChannelMatrix w_;
};

// Rate-limited helper phi_A: Z^n -> M_A. Either a per-symbol quantizer
// f: Z -> M_0 (so |M_A| = |M_0|^n) or an explicit table over Z^n.
class AdversaryEncoder {
 public:
  enum class Kind { kScalar, kTable };

  // cell_of_z[z] in [0, cells); cells = 1 + max label.
  static AdversaryEncoder ScalarQuantizer(std::vector<std::uint32_t> cell_of_z,
                                          std::size_t n);
  // From an explicit partition of the observation alphabet.
  static AdversaryEncoder FromCells(const std::vector<std::vector<std::uint32_t>>& cells,
                                    std::size_t observation_alphabet, std::size_t n);
  static AdversaryEncoder Constant(std::size_t observation_alphabet, std::size_t n);
  static AdversaryEncoder Identity(std::size_t observation_alphabet, std::size_t n);
  // table[SequenceToIndex(z)] in [0, messages).
  static AdversaryEncoder Table(std::size_t n, std::size_t observation_alphabet,
                                std::vector<std::uint32_t> table,
                                std::uint64_t messages);

  Kind kind() const { return kind_; }
  std::size_t block_length() const { return n_; }
  std::size_t observation_alphabet() const { return z_size_; }
  // |M_0| for scalar quantizers, |M_A| for tables.
  std::uint64_t cells() const { return cells_; }
  const std::vector<std::uint32_t>& cell_of_z() const { return map_; }
  std::uint64_t message_count() const;
  // (1/n) ln |M_A|.
  double rate() const;
  bool SatisfiesRate(double budget) const { return rate() <= budget + 1e-12; }

  // Same quantizer at a different block length. Scalar quantizers only.
  AdversaryEncoder WithBlockLength(std::size_t n) const;

  // Message index for an observation string (message digits base |M_0|,
  // first symbol most significant, for scalar quantizers).
  std::uint64_t Encode(std::span<const Residue> z) const;

  // Per-symbol law of f(Z) given K = k. Scalar quantizers only.
  ChannelMatrix PerSymbolChannel(const SideChannel& sc) const;

  // Pr[M_A = a | K^n = key] for every a.
  std::vector<double> MessageLikelihoods(const SideChannel& sc,
                                         std::span<const Residue> key) const;

  // H(K^n | M_A) in nats, exact. Product form for scalar quantizers,
  // enumeration over (k^n, z^n) for tables.
  double ConditionalKeyEntropy(const SideChannel& sc, const Pmf& key) const;

 private:
  AdversaryEncoder(Kind kind, std::size_t n, std::size_t z_size,
                   std::vector<std::uint32_t> map, std::uint64_t cells)
      : kind_(kind), n_(n), z_size_(z_size), map_(std::move(map)), cells_(cells) {}

  Kind kind_;
  std::size_t n_;
  std::size_t z_size_;
  std::vector<std::uint32_t> map_;
  std::uint64_t cells_;
};

// H(K | f(Z)) for a single symbol and a per-symbol quantizer.
double QuantizedConditionalEntropy(const SideChannel& sc, const Pmf& key,
                                   std::span<const std::uint32_t> cell_of_z);

struct QuantizerSearchResult {
  AdversaryEncoder encoder;
  double conditional_entropy = 0.0;  // per symbol, H(K | f(Z))
  std::uint64_t partitions_examined = 0;
};

// Exhaustive search over set partitions of Z into at most floor(e^{R_A})
// cells minimizing H(K | f(Z)). Partitions are visited as restricted growth
// strings in lexicographic order and only strict improvements replace the
// incumbent, so ties resolve to the smallest encoding. Throws
// std::invalid_argument when |Z| > max_observations.
QuantizerSearchResult BestScalarQuantizer(const SideChannel& sc, const Pmf& key,
                                          double rate_budget, std::size_t n = 1,
                                          std::size_t max_observations = 12);

// Largest cell count allowed by a per-symbol rate budget.
std::uint64_t MaxCellsForRate(double rate_budget);

}  // namespace scslab

#endif  // SCSLAB_ADVERSARY_H_

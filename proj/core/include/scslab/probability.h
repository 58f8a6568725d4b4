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

#ifndef SCSLAB_PROBABILITY_H_
#define SCSLAB_PROBABILITY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scslab/galois.h"
#include "scslab/rng.h"

// Finite distributions, channels and information measures. All logarithms are
// natural; every information quantity is in nats.
namespace scslab {

inline constexpr double kPmfTolerance = 1e-12;

// x ln x with 0 ln 0 = 0.
double XLogX(double x);

// Probability mass function over {0, ..., size-1}.
class Pmf {
 public:
  // Entries must be >= 0 and sum to 1 within kPmfTolerance, unless
  // `renormalize` is set, in which case any non-negative vector with positive
  // mass is rescaled.
  explicit Pmf(std::vector<double> probs, bool renormalize = false);

  static Pmf Uniform(std::size_t size);
  static Pmf Degenerate(std::size_t size, std::size_t letter);
  static Pmf Bernoulli(double p);  // P(1) = p

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Stochastic matrix: one output Pmf per input letter.
class ChannelMatrix {
 public:
  explicit ChannelMatrix(std::vector<std::vector<double>> rows);

  static ChannelMatrix Identity(std::size_t size);
  static ChannelMatrix BinarySymmetric(double crossover);
  // Every row equal to `output`.
  static ChannelMatrix Constant(std::size_t inputs, const Pmf& output);

  std::size_t inputs() const { return rows_.size(); }
  std::size_t outputs() const { return outputs_; }
  double operator()(std::size_t in, std::size_t out) const {
    return rows_[in][out];
  }
  std::span<const double> row(std::size_t in) const { return rows_[in]; }

  Pmf OutputDistribution(const Pmf& input) const;

 private:
  std::vector<std::vector<double>> rows_;
  std::size_t outputs_;
};

// Joint distribution of a pair (A, B) as a |A| x |B| table.
class JointPmf {
 public:
  JointPmf(std::size_t rows, std::size_t cols, std::vector<double> table);

  // p(a, b) = p_A(a) W(b | a).
  static JointPmf FromInputAndChannel(const Pmf& input,
                                      const ChannelMatrix& channel);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t a, std::size_t b) const {
    return table_[a * cols_ + b];
  }
  std::span<const double> table() const { return table_; }

  Pmf RowMarginal() const;
  Pmf ColMarginal() const;
  // Conditional law of the row variable given column value b.
  Pmf RowGivenCol(std::size_t b) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> table_;
};

double Entropy(std::span<const double> probs);
inline double Entropy(const Pmf& p) { return Entropy(p.probs()); }
double JointEntropy(const JointPmf& joint);
// H(B | A) for joint p(a, b).
double ConditionalEntropy(const JointPmf& joint);
// H(A | B) for joint p(a, b).
double ConditionalEntropyRowGivenCol(const JointPmf& joint);
double MutualInformation(const JointPmf& joint);

// D(p || q). Returns +infinity when support(p) is not contained in
// support(q); callers test with std::isinf.
double KlDivergence(std::span<const double> p, std::span<const double> q);
inline double KlDivergence(const Pmf& p, const Pmf& q) {
  return KlDivergence(p.probs(), q.probs());
}

// Memoryless extension p^n. Probabilities of individual sequences are
// evaluated in log space; the full table is only produced on request and only
// below `materialize_cap` entries.
class ProductDistribution {
 public:
  static constexpr std::uint64_t kDefaultMaterializeCap = std::uint64_t{1} << 24;

  ProductDistribution(Pmf marginal, std::size_t n,
                      std::uint64_t materialize_cap = kDefaultMaterializeCap);

  const Pmf& marginal() const { return marginal_; }
  std::size_t length() const { return n_; }

  double LogProbability(std::span<const Residue> seq) const;
  double Probability(std::span<const Residue> seq) const;
  // Probability of every sequence, indexed by SequenceToIndex. Throws
  // std::length_error when |X|^n exceeds the cap.
  std::vector<double> Materialize() const;

 private:
  Pmf marginal_;
  std::size_t n_;
  std::uint64_t cap_;
};

std::size_t SampleLetter(std::span<const double> probs, Rng& rng);
inline std::size_t SampleLetter(const Pmf& p, Rng& rng) {
  return SampleLetter(p.probs(), rng);
}
FieldVec SampleSequence(const Pmf& p, std::size_t n, std::uint64_t seed);
// One channel use per input letter.
FieldVec SampleChannelOutput(const ChannelMatrix& channel,
                             std::span<const Residue> input,
                             std::uint64_t seed);

}  // namespace scslab

#endif  // SCSLAB_PROBABILITY_H_

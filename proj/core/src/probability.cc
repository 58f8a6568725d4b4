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

#include "scslab/probability.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace scslab {
namespace {

void ValidateProbs(std::vector<double>& probs, bool renormalize,
                   const char* what) {
  if (probs.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument(std::string(what) +
                                  ": negative or non-finite entry");
    }
    total += p;
  }
  if (renormalize) {
    if (total <= 0.0) throw std::invalid_argument(std::string(what) + ": zero mass");
    for (double& p : probs) p /= total;
    return;
  }
  if (std::abs(total - 1.0) > kPmfTolerance) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                std::to_string(total) + ", not 1");
  }
}

}  // namespace

double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Pmf::Pmf(std::vector<double> probs, bool renormalize) : probs_(std::move(probs)) {
  ValidateProbs(probs_, renormalize, "pmf");
}

Pmf Pmf::Uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("uniform over empty alphabet");
  return Pmf(std::vector<double>(size, 1.0 / static_cast<double>(size)), true);
}

Pmf Pmf::Degenerate(std::size_t size, std::size_t letter) {
  if (letter >= size) throw std::out_of_range("degenerate letter outside alphabet");
  std::vector<double> p(size, 0.0);
  p[letter] = 1.0;
  return Pmf(std::move(p));
}

Pmf Pmf::Bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Bernoulli parameter");
  return Pmf({1.0 - p, p});
}

ChannelMatrix::ChannelMatrix(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("channel: no rows");
  outputs_ = rows_.front().size();
  for (auto& r : rows_) {
    if (r.size() != outputs_) throw std::invalid_argument("channel: ragged rows");
    ValidateProbs(r, false, "channel row");
  }
}

ChannelMatrix ChannelMatrix::Identity(std::size_t size) {
  std::vector<std::vector<double>> rows(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < size; ++i) rows[i][i] = 1.0;
  return ChannelMatrix(std::move(rows));
}

ChannelMatrix ChannelMatrix::BinarySymmetric(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) {
    throw std::invalid_argument("BSC crossover");
  }
  return ChannelMatrix({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

ChannelMatrix ChannelMatrix::Constant(std::size_t inputs, const Pmf& output) {
  std::vector<double> row(output.probs().begin(), output.probs().end());
  return ChannelMatrix(std::vector<std::vector<double>>(inputs, row));
}

Pmf ChannelMatrix::OutputDistribution(const Pmf& input) const {
  if (input.size() != inputs()) throw std::invalid_argument("channel input size");
  std::vector<double> out(outputs_, 0.0);
  for (std::size_t i = 0; i < inputs(); ++i) {
    for (std::size_t j = 0; j < outputs_; ++j) out[j] += input[i] * rows_[i][j];
  }
  return Pmf(std::move(out), true);
}

JointPmf::JointPmf(std::size_t rows, std::size_t cols, std::vector<double> table)
    : rows_(rows), cols_(cols), table_(std::move(table)) {
  if (table_.size() != rows_ * cols_) throw std::invalid_argument("joint: table size");
  ValidateProbs(table_, false, "joint");
}

JointPmf JointPmf::FromInputAndChannel(const Pmf& input,
                                       const ChannelMatrix& channel) {
  if (input.size() != channel.inputs()) {
    throw std::invalid_argument("joint: input/channel size mismatch");
  }
  std::vector<double> t(input.size() * channel.outputs());
  double total = 0.0;
  for (std::size_t a = 0; a < input.size(); ++a) {
    for (std::size_t b = 0; b < channel.outputs(); ++b) {
      t[a * channel.outputs() + b] = input[a] * channel(a, b);
      total += t[a * channel.outputs() + b];
    }
  }
  // Round-off from the product can exceed the validation tolerance.
  for (double& v : t) v /= total;
  return JointPmf(input.size(), channel.outputs(), std::move(t));
}

Pmf JointPmf::RowMarginal() const {
  std::vector<double> m(rows_, 0.0);
  for (std::size_t a = 0; a < rows_; ++a) {
    for (std::size_t b = 0; b < cols_; ++b) m[a] += (*this)(a, b);
  }
  return Pmf(std::move(m), true);
}

Pmf JointPmf::ColMarginal() const {
  std::vector<double> m(cols_, 0.0);
  for (std::size_t a = 0; a < rows_; ++a) {
    for (std::size_t b = 0; b < cols_; ++b) m[b] += (*this)(a, b);
  }
  return Pmf(std::move(m), true);
}

Pmf JointPmf::RowGivenCol(std::size_t b) const {
  std::vector<double> c(rows_);
  for (std::size_t a = 0; a < rows_; ++a) c[a] = (*this)(a, b);
  return Pmf(std::move(c), true);
}

double Entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h -= XLogX(p);
  return h;
}

double JointEntropy(const JointPmf& joint) { return Entropy(joint.table()); }

double ConditionalEntropy(const JointPmf& joint) {
  return JointEntropy(joint) - Entropy(joint.RowMarginal());
}

double ConditionalEntropyRowGivenCol(const JointPmf& joint) {
  return JointEntropy(joint) - Entropy(joint.ColMarginal());
}

double MutualInformation(const JointPmf& joint) {
  const Pmf pa = joint.RowMarginal();
  const Pmf pb = joint.ColMarginal();
  double mi = 0.0;
  for (std::size_t a = 0; a < joint.rows(); ++a) {
    for (std::size_t b = 0; b < joint.cols(); ++b) {
      const double p = joint(a, b);
      if (p > 0.0) mi += p * std::log(p / (pa[a] * pb[b]));
    }
  }
  return mi;
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("KL: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  // Exact zero at p == q, and no negative round-off.
  return d > 0.0 ? d : 0.0;
}

ProductDistribution::ProductDistribution(Pmf marginal, std::size_t n,
                                         std::uint64_t materialize_cap)
    : marginal_(std::move(marginal)), n_(n), cap_(materialize_cap) {
  if (n_ == 0) throw std::invalid_argument("product distribution: n >= 1");
}

double ProductDistribution::LogProbability(std::span<const Residue> seq) const {
  if (seq.size() != n_) throw std::invalid_argument("sequence length != n");
  double lp = 0.0;
  for (Residue s : seq) {
    if (s >= marginal_.size()) throw std::out_of_range("symbol outside alphabet");
    const double p = marginal_[s];
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += std::log(p);
  }
  return lp;
}

double ProductDistribution::Probability(std::span<const Residue> seq) const {
  return std::exp(LogProbability(seq));
}

std::vector<double> ProductDistribution::Materialize() const {
  const auto q = static_cast<std::uint32_t>(marginal_.size());
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < n_; ++t) {
    if (total > cap_ / q) {
      throw std::length_error("product distribution: q^n exceeds cap " + std::to_string(cap_));
    }
    total *= q;
  }
  // Built by repeated outer product; index order matches SequenceToIndex.
  std::vector<double> table{1.0};
  for (std::size_t t = 0; t < n_; ++t) {
    std::vector<double> next(table.size() * q);
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::uint32_t s = 0; s < q; ++s) next[i * q + s] = table[i] * marginal_[s];
    }
    table = std::move(next);
  }
  return table;
}

std::size_t SampleLetter(std::span<const double> probs, Rng& rng) {
  const double u = rng.UniformUnit();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

FieldVec SampleSequence(const Pmf& p, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  FieldVec seq(n);
  for (auto& s : seq) s = static_cast<Residue>(SampleLetter(p, rng));
  return seq;
}

FieldVec SampleChannelOutput(const ChannelMatrix& channel,
                             std::span<const Residue> input,
                             std::uint64_t seed) {
  Rng rng(seed);
  FieldVec out(input.size());
  for (std::size_t t = 0; t < input.size(); ++t) {
    if (input[t] >= channel.inputs()) throw std::out_of_range("channel input letter");
    out[t] = static_cast<Residue>(SampleLetter(channel.row(input[t]), rng));
  }
  return out;
}

}  // namespace scslab

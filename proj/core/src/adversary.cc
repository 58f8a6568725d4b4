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

#include "scslab/adversary.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace scslab {

AdversaryEncoder AdversaryEncoder::ScalarQuantizer(std::vector<std::uint32_t> cell_of_z,
                                                   std::size_t n) {
  if (cell_of_z.empty()) throw std::invalid_argument("quantizer: empty observation alphabet");
  if (n == 0) throw std::invalid_argument("quantizer: n >= 1");
  const std::uint64_t cells = 1 + *std::max_element(cell_of_z.begin(), cell_of_z.end());
  const std::size_t z_size = cell_of_z.size();
  return AdversaryEncoder(Kind::kScalar, n, z_size, std::move(cell_of_z), cells);
}

AdversaryEncoder AdversaryEncoder::FromCells(
    const std::vector<std::vector<std::uint32_t>>& cells,
    std::size_t observation_alphabet, std::size_t n) {
  std::vector<std::int64_t> label(observation_alphabet, -1);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].empty()) throw std::invalid_argument("quantizer: empty cell");
    for (std::uint32_t z : cells[c]) {
      if (z >= observation_alphabet) throw std::invalid_argument("quantizer: letter outside Z");
      if (label[z] >= 0) throw std::invalid_argument("quantizer: letter in two cells");
      label[z] = static_cast<std::int64_t>(c);
    }
  }
  std::vector<std::uint32_t> map(observation_alphabet);
  for (std::size_t z = 0; z < observation_alphabet; ++z) {
    if (label[z] < 0) throw std::invalid_argument("quantizer: cells do not cover Z");
    map[z] = static_cast<std::uint32_t>(label[z]);
  }
  return ScalarQuantizer(std::move(map), n);
}

AdversaryEncoder AdversaryEncoder::Constant(std::size_t observation_alphabet, std::size_t n) {
  return ScalarQuantizer(std::vector<std::uint32_t>(observation_alphabet, 0), n);
}

AdversaryEncoder AdversaryEncoder::Identity(std::size_t observation_alphabet, std::size_t n) {
  std::vector<std::uint32_t> map(observation_alphabet);
  for (std::size_t z = 0; z < observation_alphabet; ++z) map[z] = static_cast<std::uint32_t>(z);
  return ScalarQuantizer(std::move(map), n);
}

AdversaryEncoder AdversaryEncoder::Table(std::size_t n, std::size_t observation_alphabet,
                                         std::vector<std::uint32_t> table,
                                         std::uint64_t messages) {
  if (n == 0 || observation_alphabet == 0) throw std::invalid_argument("table encoder: empty");
  if (table.size() != IntPow(observation_alphabet, n)) {
    throw std::invalid_argument("table encoder: table must cover Z^n");
  }
  for (std::uint32_t a : table) {
    if (a >= messages) throw std::invalid_argument("table encoder: message >= |M_A|");
  }
  return AdversaryEncoder(Kind::kTable, n, observation_alphabet, std::move(table), messages);
}

std::uint64_t AdversaryEncoder::message_count() const {
  return kind_ == Kind::kScalar ? IntPow(cells_, n_) : cells_;
}

double AdversaryEncoder::rate() const {
  if (kind_ == Kind::kScalar) return std::log(static_cast<double>(cells_));
  return std::log(static_cast<double>(cells_)) / static_cast<double>(n_);
}

AdversaryEncoder AdversaryEncoder::WithBlockLength(std::size_t n) const {
  if (kind_ != Kind::kScalar) throw std::logic_error("table encoders have a fixed block length");
  return ScalarQuantizer(map_, n);
}

std::uint64_t AdversaryEncoder::Encode(std::span<const Residue> z) const {
  if (z.size() != n_) throw std::invalid_argument("adversary: observation length != n");
  if (kind_ == Kind::kTable) return map_[SequenceToIndex(z, static_cast<std::uint32_t>(z_size_))];
  std::uint64_t a = 0;
  for (Residue s : z) {
    if (s >= z_size_) throw std::out_of_range("observation outside Z");
    a = a * cells_ + map_[s];
  }
  return a;
}

ChannelMatrix AdversaryEncoder::PerSymbolChannel(const SideChannel& sc) const {
  if (kind_ != Kind::kScalar) throw std::logic_error("per-symbol channel needs a scalar quantizer");
  if (sc.observation_alphabet() != z_size_) {
    throw std::invalid_argument("quantizer alphabet != side-channel output alphabet");
  }
  std::vector<std::vector<double>> rows(sc.key_alphabet(), std::vector<double>(cells_, 0.0));
  for (std::size_t k = 0; k < sc.key_alphabet(); ++k) {
    for (std::size_t z = 0; z < z_size_; ++z) rows[k][map_[z]] += sc.matrix()(k, z);
    double total = 0.0;
    for (double v : rows[k]) total += v;
    for (double& v : rows[k]) v /= total;
  }
  return ChannelMatrix(std::move(rows));
}

std::vector<double> AdversaryEncoder::MessageLikelihoods(const SideChannel& sc,
                                                         std::span<const Residue> key) const {
  if (key.size() != n_) throw std::invalid_argument("adversary: key length != n");
  if (sc.observation_alphabet() != z_size_) {
    throw std::invalid_argument("encoder alphabet != side-channel output alphabet");
  }
  if (kind_ == Kind::kScalar) {
    const ChannelMatrix v = PerSymbolChannel(sc);
    // Expand the product over positions; message digits in the same order as
    // Encode (first symbol most significant).
    std::vector<double> lik{1.0};
    for (Residue k : key) {
      std::vector<double> next(lik.size() * cells_);
      for (std::size_t i = 0; i < lik.size(); ++i) {
        for (std::uint64_t a = 0; a < cells_; ++a) next[i * cells_ + a] = lik[i] * v(k, a);
      }
      lik = std::move(next);
    }
    return lik;
  }
  std::vector<double> lik(cells_, 0.0);
  const auto zq = static_cast<std::uint32_t>(z_size_);
  const std::uint64_t zspace = IntPow(z_size_, n_);
  for (std::uint64_t zi = 0; zi < zspace; ++zi) {
    const FieldVec z = IndexToSequence(zi, n_, zq);
    double p = 1.0;
    for (std::size_t t = 0; t < n_; ++t) p *= sc.matrix()(key[t], z[t]);
    lik[map_[zi]] += p;
  }
  return lik;
}

double QuantizedConditionalEntropy(const SideChannel& sc, const Pmf& key,
                                   std::span<const std::uint32_t> cell_of_z) {
  std::vector<std::uint32_t> map(cell_of_z.begin(), cell_of_z.end());
  const AdversaryEncoder f = AdversaryEncoder::ScalarQuantizer(std::move(map), 1);
  return ConditionalEntropyRowGivenCol(
      JointPmf::FromInputAndChannel(key, f.PerSymbolChannel(sc)));
}

double AdversaryEncoder::ConditionalKeyEntropy(const SideChannel& sc, const Pmf& key) const {
  if (key.size() != sc.key_alphabet()) throw std::invalid_argument("key alphabet mismatch");
  if (kind_ == Kind::kScalar) {
    return static_cast<double>(n_) * QuantizedConditionalEntropy(sc, key, map_);
  }
  // H(K^n | M_A) = H(K^n, M_A) - H(M_A) by enumeration over k^n.
  const auto kq = static_cast<std::uint32_t>(key.size());
  const ProductDistribution pk(key, n_);
  const std::uint64_t kspace = IntPow(kq, n_);
  std::vector<double> pa(cells_, 0.0);
  double joint_entropy = 0.0;
  for (std::uint64_t ki = 0; ki < kspace; ++ki) {
    const FieldVec k = IndexToSequence(ki, n_, kq);
    const double p = pk.Probability(k);
    if (p <= 0.0) continue;
    const std::vector<double> lik = MessageLikelihoods(sc, k);
    for (std::uint64_t a = 0; a < cells_; ++a) {
      const double pka = p * lik[a];
      pa[a] += pka;
      joint_entropy -= XLogX(pka);
    }
  }
  return joint_entropy - Entropy(pa);
}

std::uint64_t MaxCellsForRate(double rate_budget) {
  if (rate_budget < 0.0) throw std::invalid_argument("negative rate budget");
  // Slack so that budget = ln L admits exactly L cells.
  const double cells = std::floor(std::exp(rate_budget) * (1.0 + 1e-12));
  return cells >= 1e18 ? std::uint64_t{1} << 60 : static_cast<std::uint64_t>(cells);
}

QuantizerSearchResult BestScalarQuantizer(const SideChannel& sc, const Pmf& key,
                                          double rate_budget, std::size_t n,
                                          std::size_t max_observations) {
  const std::size_t zs = sc.observation_alphabet();
  if (zs > max_observations) {
    throw std::invalid_argument("observation alphabet too large for exhaustive partition search");
  }
  const std::uint64_t max_cells = std::min<std::uint64_t>(MaxCellsForRate(rate_budget), zs);

  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<std::uint32_t> rgs(zs, 0);
  std::vector<std::uint32_t> prefix_max(zs, 0);
  std::vector<std::uint32_t> best = rgs;
  double best_h = QuantizedConditionalEntropy(sc, key, rgs);
  std::uint64_t examined = 1;
  while (true) {
    // Advance to the next RGS with at most max_cells blocks.
    std::size_t i = zs;
    while (i-- > 1) {
      const std::uint32_t limit = prefix_max[i - 1] + 1;
      if (rgs[i] < limit && rgs[i] + 1 < max_cells) break;
    }
    if (i == 0 || i >= zs) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < zs; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
    ++examined;
    const double h = QuantizedConditionalEntropy(sc, key, rgs);
    if (h < best_h - 1e-13) {
      best_h = h;
      best = rgs;
    }
  }
  return {AdversaryEncoder::ScalarQuantizer(best, n), best_h, examined};
}

}  // namespace scslab

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
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "scslab/galois.h"
#include "scslab/probability.h"
#include "scslab/rng.h"

namespace scslab {
namespace {

// H(K | f(Z)) from the joint table, with f given by cell labels.
double OracleQuantizedEntropy(const Pmf& key, const ChannelMatrix& w,
                              const std::vector<std::uint32_t>& label) {
  const std::uint32_t cells = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<double> joint(key.size() * cells, 0.0), pm(cells, 0.0);
  for (std::size_t k = 0; k < key.size(); ++k) {
    for (std::size_t z = 0; z < w.outputs(); ++z) {
      joint[k * cells + label[z]] += key[k] * w(k, z);
      pm[label[z]] += key[k] * w(k, z);
    }
  }
  double h = 0.0;
  for (std::size_t k = 0; k < key.size(); ++k) {
    for (std::uint32_t c = 0; c < cells; ++c) {
      const double v = joint[k * cells + c];
      if (v > 0) h -= v * std::log(v / pm[c]);
    }
  }
  return h;
}

// All set partitions of {0..size-1} as restricted growth strings.
std::vector<std::vector<std::uint32_t>> AllPartitions(std::size_t size) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> a(size, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t max) {
    if (i == size) {
      out.push_back(a);
      return;
    }
    for (std::uint32_t v = 0; v <= max + 1; ++v) {
      a[i] = v;
      rec(i + 1, std::max(max, v));
    }
  };
  a[0] = 0;
  rec(1, 0);
  return out;
}

bool Refines(const std::vector<std::uint32_t>& fine, const std::vector<std::uint32_t>& coarse) {
  for (std::size_t i = 0; i < fine.size(); ++i) {
    for (std::size_t j = 0; j < fine.size(); ++j) {
      if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
    }
  }
  return true;
}

ChannelMatrix SyntheticChannel() {
  return ChannelMatrix({{0.5, 0.3, 0.15, 0.05}, {0.1, 0.2, 0.3, 0.4}, {0.25, 0.05, 0.6, 0.1}});
}

TEST(SideChannelTest, IdentityAndConstant) {
  const FieldVec k = SampleSequence(Pmf::Uniform(3), 40, 1);
  EXPECT_EQ(SideChannel(ChannelMatrix::Identity(3)).Sample(k, 2), k);
  const SideChannel useless(ChannelMatrix::Constant(3, Pmf::Degenerate(2, 1)));
  const FieldVec z = useless.Sample(k, 3);
  EXPECT_TRUE(std::all_of(z.begin(), z.end(), [](Residue r) { return r == 1; }));
}

TEST(SideChannelTest, BinarySymmetricFlipRate) {
  const FieldVec k = SampleSequence(Pmf::Uniform(2), 100000, 4);
  const FieldVec z = SideChannel(ChannelMatrix::BinarySymmetric(0.1)).Sample(k, 5);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < k.size(); ++i) flips += k[i] != z[i];
  EXPECT_NEAR(flips / 1e5, 0.1, 0.01);
}

TEST(ScalarQuantizerTest, ConditionalEntropyExamples) {
  const Pmf key = Pmf::Uniform(2);
  const SideChannel bsc(ChannelMatrix::BinarySymmetric(0.1));
  EXPECT_NEAR(AdversaryEncoder::Constant(2, 5).ConditionalKeyEntropy(bsc, key), 5 * std::log(2.0),
              1e-12);
  EXPECT_NEAR(AdversaryEncoder::Identity(2, 5).ConditionalKeyEntropy(
                  SideChannel(ChannelMatrix::Identity(2)), key),
              0.0, 1e-12);
  const double h01 = -0.1 * std::log(0.1) - 0.9 * std::log(0.9);
  EXPECT_NEAR(AdversaryEncoder::Identity(2, 6).ConditionalKeyEntropy(bsc, key) / 6, h01, 1e-12);
  EXPECT_NEAR(h01, 0.325083, 1e-6);
}

TEST(ScalarQuantizerTest, RateAccounting) {
  const AdversaryEncoder a = AdversaryEncoder::FromCells({{0, 2}, {1}, {3}}, 4, 3);
  EXPECT_EQ(a.cells(), 3u);
  EXPECT_EQ(a.message_count(), 27u);
  EXPECT_NEAR(a.rate(), std::log(3.0), 1e-15);
  EXPECT_TRUE(a.SatisfiesRate(std::log(3.0)));
  EXPECT_FALSE(a.SatisfiesRate(1.0));
  EXPECT_EQ(AdversaryEncoder::Constant(4, 3).rate(), 0.0);
  EXPECT_EQ(a.Encode(FieldVec{2, 1, 3}), 0u * 9 + 1u * 3 + 2u);
  EXPECT_THROW(AdversaryEncoder::FromCells({{0}, {0, 1}}, 2, 1), std::invalid_argument);
  EXPECT_THROW(AdversaryEncoder::FromCells({{0}}, 2, 1), std::invalid_argument);
}

TEST(ScalarQuantizerTest, LikelihoodsAreDistributions) {
  const SideChannel sc(SyntheticChannel());
  const AdversaryEncoder a = AdversaryEncoder::FromCells({{0, 3}, {1, 2}}, 4, 3);
  const std::vector<double> l = a.MessageLikelihoods(sc, FieldVec{2, 0, 1});
  ASSERT_EQ(l.size(), 8u);
  EXPECT_NEAR(std::accumulate(l.begin(), l.end(), 0.0), 1.0, 1e-14);
  // a = (cell 1, cell 0, cell 1) = 0b101.
  EXPECT_NEAR(l[5], (0.05 + 0.6) * (0.5 + 0.05) * (0.2 + 0.3), 1e-15);
}

TEST(BestScalarQuantizerTest, Extremes) {
  const Pmf key({0.5, 0.3, 0.2});
  const SideChannel sc(SyntheticChannel());
  const QuantizerSearchResult full = BestScalarQuantizer(sc, key, std::log(4.0));
  EXPECT_NEAR(full.conditional_entropy,
              ConditionalEntropyRowGivenCol(JointPmf::FromInputAndChannel(key, sc.matrix())),
              1e-12);
  const QuantizerSearchResult none = BestScalarQuantizer(sc, key, 0.0);
  EXPECT_NEAR(none.conditional_entropy, Entropy(key), 1e-12);
  EXPECT_EQ(none.encoder.cells(), 1u);
}

TEST(BestScalarQuantizerTest, MatchesBruteForceOverTwoCellPartitions) {
  const Pmf key({0.5, 0.3, 0.2});
  const ChannelMatrix w = SyntheticChannel();
  double best = std::numeric_limits<double>::infinity();
  int two_cell = 0;
  for (const auto& p : AllPartitions(4)) {
    if (*std::max_element(p.begin(), p.end()) > 1) continue;
    two_cell += *std::max_element(p.begin(), p.end()) == 1;
    best = std::min(best, OracleQuantizedEntropy(key, w, p));
  }
  EXPECT_EQ(two_cell, 7);
  const QuantizerSearchResult r = BestScalarQuantizer(SideChannel(w), key, std::log(2.0));
  EXPECT_NEAR(r.conditional_entropy, best, 1e-12);
  EXPECT_LE(r.encoder.cells(), 2u);
  EXPECT_TRUE(r.encoder.SatisfiesRate(std::log(2.0)));
  EXPECT_NEAR(QuantizedConditionalEntropy(SideChannel(w), key, r.encoder.cell_of_z()), best, 1e-12);
}

TEST(BestScalarQuantizerTest, RefusesLargeAlphabet) {
  const SideChannel sc(ChannelMatrix::Constant(2, Pmf::Uniform(13)));
  EXPECT_THROW(BestScalarQuantizer(sc, Pmf::Uniform(2), 1.0), std::invalid_argument);
  EXPECT_NO_THROW(BestScalarQuantizer(sc, Pmf::Uniform(2), 0.5, 1, 13));
}

TEST(QuantizerPropertyTest, RefinementNeverIncreasesEntropy) {
  const Pmf key({0.4, 0.35, 0.25});
  const ChannelMatrix w({{0.3, 0.2, 0.1, 0.3, 0.1},
                         {0.05, 0.4, 0.2, 0.15, 0.2},
                         {0.2, 0.1, 0.4, 0.1, 0.2}});
  const SideChannel sc(w);
  const auto parts = AllPartitions(5);
  ASSERT_EQ(parts.size(), 52u);
  std::vector<double> h;
  for (const auto& p : parts) {
    h.push_back(QuantizedConditionalEntropy(sc, key, p));
    EXPECT_NEAR(h.back(), OracleQuantizedEntropy(key, w, p), 1e-12);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (Refines(parts[i], parts[j])) {
        EXPECT_LE(h[i], h[j] + 1e-12);
      }
    }
  }
}

TEST(QuantizerPropertyTest, DataProcessingForScalarEncoders) {
  const Pmf key({0.4, 0.35, 0.25});
  const SideChannel sc(SyntheticChannel());
  const double floor = ConditionalEntropyRowGivenCol(JointPmf::FromInputAndChannel(key, sc.matrix()));
  for (const auto& p : AllPartitions(4)) {
    const AdversaryEncoder a = AdversaryEncoder::ScalarQuantizer(p, 3);
    EXPECT_GE(a.ConditionalKeyEntropy(sc, key), 3 * floor - 1e-12);
  }
}

// H(K^n | M_A) for a table encoder by enumerating (k^n, z^n).
double OracleTableEntropy(const SideChannel& sc, const Pmf& key, std::size_t n,
                          const std::vector<std::uint32_t>& table, std::uint64_t messages) {
  const std::uint32_t q = static_cast<std::uint32_t>(key.size());
  const std::uint32_t zs = static_cast<std::uint32_t>(sc.observation_alphabet());
  std::vector<double> joint(IntPow(q, n) * messages, 0.0), pm(messages, 0.0);
  for (std::uint64_t k = 0; k < IntPow(q, n); ++k) {
    const FieldVec ks = IndexToSequence(k, n, q);
    for (std::uint64_t z = 0; z < IntPow(zs, n); ++z) {
      const FieldVec zseq = IndexToSequence(z, n, zs);
      double p = 1.0;
      for (std::size_t t = 0; t < n; ++t) p *= key[ks[t]] * sc.matrix()(ks[t], zseq[t]);
      joint[k * messages + table[z]] += p;
      pm[table[z]] += p;
    }
  }
  double h = 0.0;
  for (std::uint64_t k = 0; k < IntPow(q, n); ++k) {
    for (std::uint64_t a = 0; a < messages; ++a) {
      const double v = joint[k * messages + a];
      if (v > 0) h -= v * std::log(v / pm[a]);
    }
  }
  return h;
}

TEST(TableEncoderTest, ExactEntropyAndDataProcessing) {
  const Pmf key = Pmf::Bernoulli(0.4);
  const SideChannel sc(ChannelMatrix({{0.7, 0.2, 0.1}, {0.1, 0.3, 0.6}}));
  const double floor = ConditionalEntropyRowGivenCol(JointPmf::FromInputAndChannel(key, sc.matrix()));
  Rng rng(8);
  for (std::size_t n : {2u, 3u, 4u}) {
    const std::uint64_t zn = IntPow(3, n);
    std::vector<std::uint32_t> table(zn);
    for (auto& t : table) t = static_cast<std::uint32_t>(rng.UniformBelow(4));
    table[0] = 0, table[1] = 1, table[2] = 2, table[3] = 3;
    const AdversaryEncoder a = AdversaryEncoder::Table(n, 3, table, 4);
    const double h = a.ConditionalKeyEntropy(sc, key);
    EXPECT_NEAR(h, OracleTableEntropy(sc, key, n, table, 4), 1e-12);
    EXPECT_GE(h, n * floor - 1e-12);
    EXPECT_NEAR(a.rate(), std::log(4.0) / n, 1e-15);
  }
}

TEST(TableEncoderTest, MonteCarloMessageFrequencies) {
  const Pmf key = Pmf::Bernoulli(0.4);
  const SideChannel sc(ChannelMatrix({{0.7, 0.2, 0.1}, {0.1, 0.3, 0.6}}));
  std::vector<std::uint32_t> table(9);
  for (std::uint32_t z = 0; z < 9; ++z) table[z] = z % 3;
  const AdversaryEncoder a = AdversaryEncoder::Table(2, 3, table, 3);
  const FieldVec k{1, 0};
  const std::vector<double> exact = a.MessageLikelihoods(sc, k);
  std::vector<double> freq(3, 0.0);
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) freq[a.Encode(sc.Sample(k, DeriveSeed(3, "mc", t)))] += 1.0 / trials;
  for (std::size_t m = 0; m < 3; ++m) EXPECT_NEAR(freq[m], exact[m], 0.01);
}

TEST(TableEncoderTest, ProductTableAgreesWithScalarForm) {
  const Pmf key = Pmf::Uniform(2);
  const SideChannel sc(ChannelMatrix::BinarySymmetric(0.2));
  const AdversaryEncoder scalar = AdversaryEncoder::Identity(2, 4);
  std::vector<std::uint32_t> table(16);
  std::iota(table.begin(), table.end(), 0u);
  const AdversaryEncoder t = AdversaryEncoder::Table(4, 2, table, 16);
  EXPECT_NEAR(t.ConditionalKeyEntropy(sc, key), scalar.ConditionalKeyEntropy(sc, key), 1e-12);
  const FieldVec k{1, 0, 0, 1};
  const std::vector<double> ls = scalar.MessageLikelihoods(sc, k), lt = t.MessageLikelihoods(sc, k);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(ls[i], lt[i], 1e-15);
}

}  // namespace
}  // namespace scslab

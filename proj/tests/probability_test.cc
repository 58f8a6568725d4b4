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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "scslab/galois.h"
#include "scslab/rng.h"
#include "scslab/serialization.h"
#include "scslab/types.h"

namespace scslab {
namespace {

// Direct -sum p ln p; independent of the library's XLogX helper.
double NaiveEntropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0) h -= v * std::log(v);
  }
  return h;
}

std::vector<double> RandomSimplexPoint(Rng& rng, std::size_t size) {
  std::vector<double> v(size);
  double total = 0.0;
  for (double& e : v) {
    e = -std::log(1.0 - rng.UniformUnit());
    total += e;
  }
  for (double& e : v) e /= total;
  return v;
}

TEST(PmfTest, Validation) {
  EXPECT_THROW(Pmf({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Pmf({-0.1, 1.1}), std::invalid_argument);
  EXPECT_NO_THROW(Pmf({0.5, 0.5 + 1e-13}));
  const Pmf renormalized({2.0, 6.0}, true);
  EXPECT_DOUBLE_EQ(renormalized[1], 0.75);
  EXPECT_DOUBLE_EQ(Pmf::Bernoulli(0.3)[1], 0.3);
}

TEST(EntropyTest, Examples) {
  EXPECT_NEAR(Entropy(Pmf::Uniform(2)), 0.693147, 1e-6);
  EXPECT_NEAR(Entropy(Pmf::Bernoulli(0.1)), -0.1 * std::log(0.1) - 0.9 * std::log(0.9), 1e-15);
  EXPECT_NEAR(Entropy(Pmf::Bernoulli(0.1)), 0.325083, 1e-6);
  EXPECT_EQ(Entropy(Pmf::Degenerate(3, 1)), 0.0);
  const JointPmf independent(2, 2, {0.12, 0.28, 0.18, 0.42});
  EXPECT_NEAR(MutualInformation(independent), 0.0, 1e-15);
}

TEST(EntropyTest, ChainRulesOnRandomJoints) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 2 + trial % 3, cols = 2 + trial % 4;
    const std::vector<double> table = RandomSimplexPoint(rng, rows * cols);
    const JointPmf joint(rows, cols, table);
    std::vector<double> pa(rows, 0.0), pb(cols, 0.0);
    for (std::size_t a = 0; a < rows; ++a) {
      for (std::size_t b = 0; b < cols; ++b) {
        pa[a] += table[a * cols + b];
        pb[b] += table[a * cols + b];
      }
    }
    const double hab = NaiveEntropy(table);
    EXPECT_NEAR(JointEntropy(joint), hab, 1e-12);
    EXPECT_NEAR(MutualInformation(joint), NaiveEntropy(pa) + NaiveEntropy(pb) - hab, 1e-10);
    EXPECT_NEAR(ConditionalEntropy(joint), hab - NaiveEntropy(pa), 1e-10);
    EXPECT_NEAR(ConditionalEntropyRowGivenCol(joint), hab - NaiveEntropy(pb), 1e-10);
  }
}

TEST(KlDivergenceTest, NonNegativeAndZeroOnlyAtEquality) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> p = RandomSimplexPoint(rng, 4), q = RandomSimplexPoint(rng, 4);
    EXPECT_GT(KlDivergence(p, q), 1e-12);
    EXPECT_NEAR(KlDivergence(p, p), 0.0, 1e-12);
  }
}

TEST(KlDivergenceTest, SupportViolationIsInfinite) {
  EXPECT_TRUE(std::isinf(KlDivergence(Pmf({0.5, 0.5}), Pmf::Degenerate(2, 0))));
  EXPECT_NEAR(KlDivergence(Pmf::Degenerate(2, 0), Pmf({0.5, 0.5})), std::log(2.0), 1e-15);
}

TEST(ProductDistributionTest, Examples) {
  const ProductDistribution p(Pmf::Bernoulli(0.1), 2);
  EXPECT_NEAR(p.Probability(FieldVec{1, 1}), 0.01, 1e-15);
  const ProductDistribution u(Pmf::Uniform(2), 10);
  EXPECT_NEAR(u.Probability(FieldVec(10, 1)), std::ldexp(1.0, -10), 1e-18);

  const ProductDistribution p3(Pmf::Bernoulli(0.3), 3);
  double total = 0.0;
  for (std::uint64_t i = 0; i < 8; ++i) total += p3.Probability(IndexToSequence(i, 3, 2));
  EXPECT_NEAR(total, 1.0, 1e-15);
  const std::vector<double> table = p3.Materialize();
  for (std::uint64_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(table[i], p3.Probability(IndexToSequence(i, 3, 2)), 1e-16);
  }
}

TEST(ProductDistributionTest, LogSpaceAndCap) {
  const ProductDistribution p(Pmf::Bernoulli(0.1), 400);
  EXPECT_NEAR(p.LogProbability(FieldVec(400, 1)), 400 * std::log(0.1), 1e-9);
  EXPECT_THROW(p.Materialize(), std::length_error);
  EXPECT_THROW(ProductDistribution(Pmf::Uniform(2), 10, 512).Materialize(), std::length_error);
}

TEST(TypesTest, EnumerateBinaryRow) {
  const std::vector<TypeClass> types = EnumerateTypes(3, 2);
  ASSERT_EQ(types.size(), 4u);
  std::multiset<std::uint64_t> sizes;
  for (const TypeClass& t : types) sizes.insert(t.size);
  EXPECT_EQ(sizes, (std::multiset<std::uint64_t>{1, 3, 3, 1}));
  EXPECT_TRUE(std::is_sorted(types.begin(), types.end(),
                             [](const TypeClass& a, const TypeClass& b) { return a.counts < b.counts; }));
}

TEST(TypesTest, CountBoundedByPolynomial) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t q : {2u, 3u, 5u}) {
      EXPECT_LE(static_cast<double>(EnumerateTypes(n, q).size()),
                std::pow(static_cast<double>(n + 1), static_cast<double>(q)));
    }
  }
}

TEST(TypesTest, RankUnrankRoundTrip) {
  std::map<std::vector<std::uint32_t>, std::set<std::uint64_t>> ranks;
  for (std::uint64_t i = 0; i < 64; ++i) {
    const FieldVec x = IndexToSequence(i, 6, 2);
    const TypeClass t = TypeOf(x, 2);
    const std::uint64_t r = RankInType(x, 2);
    EXPECT_LT(r, t.size);
    EXPECT_EQ(UnrankInType(t.counts, r), x);
    ranks[t.counts].insert(r);
  }
  for (const auto& [counts, rs] : ranks) EXPECT_EQ(rs.size(), Multinomial(counts));
  // Lexicographic within a type.
  EXPECT_EQ(UnrankInType(std::vector<std::uint32_t>{2, 1}, 0), (FieldVec{0, 0, 1}));
  EXPECT_EQ(UnrankInType(std::vector<std::uint32_t>{2, 1}, 2), (FieldVec{1, 0, 0}));
}

TEST(TypesTest, TypeSumIsOne) {
  const Pmf p = Pmf::Bernoulli(0.27);
  for (std::size_t n = 1; n <= 14; ++n) {
    double total = 0.0;
    for (const TypeClass& t : EnumerateTypes(n, 2)) {
      total += static_cast<double>(t.size) * std::exp(t.LogSequenceProbability(p));
    }
    EXPECT_NEAR(total, 1.0, 1e-10) << "n=" << n;
  }
}

TEST(TypesTest, MultinomialOverflow) {
  EXPECT_EQ(Multinomial(std::vector<std::uint32_t>{2, 2, 2}), 90u);
  EXPECT_THROW(Multinomial(std::vector<std::uint32_t>{40, 40}), std::overflow_error);
}

TEST(SamplingTest, DegenerateAndNoiseless) {
  const FieldVec x = SampleSequence(Pmf::Degenerate(3, 2), 50, 1);
  EXPECT_TRUE(std::all_of(x.begin(), x.end(), [](Residue r) { return r == 2; }));
  const FieldVec in = SampleSequence(Pmf::Uniform(2), 200, 2);
  EXPECT_EQ(SampleChannelOutput(ChannelMatrix::BinarySymmetric(0.0), in, 3), in);
  EXPECT_EQ(SampleSequence(Pmf::Uniform(5), 30, 9), SampleSequence(Pmf::Uniform(5), 30, 9));
}

TEST(SamplingTest, BinarySymmetricFlipRate) {
  const FieldVec in = SampleSequence(Pmf::Uniform(2), 100000, 5);
  const FieldVec out = SampleChannelOutput(ChannelMatrix::BinarySymmetric(0.1), in, 6);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < in.size(); ++i) flips += in[i] != out[i];
  EXPECT_NEAR(flips / 1e5, 0.1, 0.01);
}

TEST(ChannelTest, OutputAndJoint) {
  const ChannelMatrix w = ChannelMatrix::BinarySymmetric(0.2);
  const Pmf out = w.OutputDistribution(Pmf::Bernoulli(0.25));
  EXPECT_NEAR(out[1], 0.25 * 0.8 + 0.75 * 0.2, 1e-15);
  const JointPmf joint = JointPmf::FromInputAndChannel(Pmf::Bernoulli(0.25), w);
  EXPECT_NEAR(joint(1, 0), 0.25 * 0.2, 1e-15);
  EXPECT_NEAR(joint.RowGivenCol(1)[1], 0.2 / 0.35, 1e-14);
  EXPECT_THROW(ChannelMatrix({{0.5, 0.5}, {1.0}}), std::invalid_argument);
}

TEST(JsonTest, LoadsDistributionsAndChannels) {
  const Pmf p = PmfFromJson(nlohmann::json::parse(R"({"alphabet": 3, "probs": [0.2, 0.3, 0.5]})"));
  EXPECT_EQ(p.size(), 3u);
  EXPECT_DOUBLE_EQ(p[2], 0.5);
  EXPECT_THROW(PmfFromJson(nlohmann::json::parse(R"({"alphabet": 2, "probs": [0.2, 0.3, 0.5]})")),
               std::invalid_argument);
  EXPECT_THROW(PmfFromJson(nlohmann::json::parse(R"({"probs": [0.2, 0.3]})")),
               std::invalid_argument);
  const ChannelMatrix w =
      ChannelFromJson(nlohmann::json::parse(R"({"rows": [[0.9, 0.1], [0.2, 0.8]]})"));
  EXPECT_EQ(w.outputs(), 2u);
  EXPECT_DOUBLE_EQ(w(1, 0), 0.2);
  EXPECT_EQ(PmfFromJson(ToJson(p)).probs().size(), 3u);
  EXPECT_DOUBLE_EQ(ChannelFromJson(ToJson(w))(0, 1), 0.1);
}

}  // namespace
}  // namespace scslab

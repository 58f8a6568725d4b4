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

#include "scslab/galois.h"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "scslab/rng.h"

namespace scslab {
namespace {

TEST(PrimeFieldTest, SmallIdentities) {
  EXPECT_EQ(PrimeField(2).Add(1, 1), 0u);
  EXPECT_EQ(PrimeField(3).Sub(0, 2), 1u);
}

TEST(PrimeFieldTest, InverseMatchesBruteForce) {
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const PrimeField f(q);
    for (Residue a = 1; a < q; ++a) {
      Residue brute = 0;
      for (Residue x = 1; x < q; ++x) {
        if ((a * x) % q == 1) brute = x;
      }
      EXPECT_EQ(f.Inv(a), brute) << "q=" << q << " a=" << a;
    }
  }
  EXPECT_EQ(PrimeField(5).Inv(4), 4u);
}

TEST(PrimeFieldTest, ExhaustiveFieldLaws) {
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const PrimeField f(q);
    for (Residue a = 0; a < q; ++a) {
      EXPECT_EQ(f.Add(a, f.Sub(0, a)), 0u);
      EXPECT_EQ(f.Add(a, f.Neg(a)), 0u);
      if (a != 0) {
        EXPECT_EQ(f.Mul(a, f.Inv(a)), 1u);
      }
      for (Residue b = 0; b < q; ++b) {
        EXPECT_EQ(f.Add(a, b), (a + b) % q);
        EXPECT_EQ(f.Sub(f.Add(a, b), b), a);
        EXPECT_EQ(f.Mul(a, b), (a * b) % q);
      }
    }
  }
}

TEST(PrimeFieldTest, RejectsBadInput) {
  EXPECT_THROW(PrimeField(4), std::invalid_argument);
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField(0), std::invalid_argument);
  EXPECT_THROW(PrimeField(5).Inv(0), std::domain_error);
  EXPECT_FALSE(PrimeField(5).Contains(5));
}

TEST(SequenceIndexTest, RoundTripAndOrder) {
  for (std::uint64_t i = 0; i < 81; ++i) {
    const FieldVec v = IndexToSequence(i, 4, 3);
    EXPECT_EQ(SequenceToIndex(v, 3), i);
  }
  // First symbol most significant.
  EXPECT_EQ(SequenceToIndex(FieldVec{1, 0, 0}, 2), 4u);
}

TEST(SequenceIndexTest, IndexArithmeticMatchesVectors) {
  const PrimeField f(3);
  for (std::uint64_t a = 0; a < 27; ++a) {
    for (std::uint64_t b = 0; b < 27; ++b) {
      const FieldVec va = IndexToSequence(a, 3, 3), vb = IndexToSequence(b, 3, 3);
      EXPECT_EQ(AddIndices(a, b, 3, 3), SequenceToIndex(f.AddVec(va, vb), 3));
      EXPECT_EQ(SubIndices(a, b, 3, 3), SequenceToIndex(f.SubVec(va, vb), 3));
    }
  }
}

TEST(AffineMapTest, Examples) {
  const PrimeField f2(2), f3(3);
  EXPECT_EQ(AffineMap(f2, 2, 1, {1, 1}, {0}).Apply(FieldVec{1, 1}), (FieldVec{0}));
  EXPECT_EQ(AffineMap(f2, 2, 1, {1, 1}, {1}).Apply(FieldVec{1, 0}), (FieldVec{0}));
  EXPECT_EQ(AffineMap(f3, 2, 2, {1, 0, 0, 1}, {0, 0}).Apply(FieldVec{2, 1}), (FieldVec{2, 1}));
}

TEST(AffineMapTest, DimensionMismatchThrows) {
  const AffineMap map = AffineMap::Projection(PrimeField(2), 3, 2);
  EXPECT_THROW(map.Apply(FieldVec{1, 0}), std::invalid_argument);
  EXPECT_THROW(AffineMap(PrimeField(2), 2, 2, {1, 0, 1}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(AffineMap::Random(2, 3, PrimeField(2), 1), std::invalid_argument);
}

TEST(AffineMapTest, RandomIsDeterministicAndDrawsAllEntries) {
  const PrimeField f(2);
  EXPECT_EQ(AffineMap::Random(4, 2, f, 99), AffineMap::Random(4, 2, f, 99));
  const AffineMap m = AffineMap::Random(4, 2, f, 99);
  EXPECT_EQ(m.matrix().size(), 8u);
  EXPECT_EQ(m.offset().size(), 2u);
  // The draw order is matrix first, then offset, from one stream.
  Rng rng(99);
  for (Residue e : m.matrix()) EXPECT_EQ(e, rng.UniformBelow(2));
  for (Residue e : m.offset()) EXPECT_EQ(e, rng.UniformBelow(2));
}

TEST(AffineMapTest, RandomEntriesPassChiSquare) {
  // 10^4 maps of 3x2 over GF(5): 8 entries each, 80000 residues.
  const PrimeField f(5);
  std::vector<double> counts(5, 0.0);
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const AffineMap m = AffineMap::Random(3, 2, f, DeriveSeed(7, "chi", s));
    for (Residue e : m.matrix()) counts[e] += 1;
    for (Residue e : m.offset()) counts[e] += 1;
  }
  const double expected = 80000.0 / 5.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 13.277);  // chi-square 0.99 quantile, 4 degrees of freedom
}

TEST(AffineMapTest, AffineProperty) {
  const PrimeField f(3);
  const AffineMap map = AffineMap::Random(4, 3, f, 5);
  const FieldVec zero(4, 0);
  const FieldVec base = map.Apply(zero);
  for (std::uint64_t a = 0; a < 81; a += 7) {
    for (std::uint64_t b = 0; b < 81; b += 5) {
      const FieldVec ka = IndexToSequence(a, 4, 3), kb = IndexToSequence(b, 4, 3);
      const FieldVec lhs = f.SubVec(map.Apply(f.AddVec(ka, kb)), base);
      const FieldVec rhs =
          f.AddVec(f.SubVec(map.Apply(ka), base), f.SubVec(map.Apply(kb), base));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(AffineMapTest, FullRankMapsAreSurjective) {
  const PrimeField f(2);
  int full_rank_seen = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AffineMap map = AffineMap::Random(8, 5, f, seed);
    std::set<FieldVec> image;
    for (std::uint64_t k = 0; k < 256; ++k) image.insert(map.Apply(IndexToSequence(k, 8, 2)));
    if (map.Rank() == 5) {
      ++full_rank_seen;
      EXPECT_EQ(image.size(), 32u);
    } else {
      EXPECT_EQ(image.size(), std::size_t{1} << map.Rank());
    }
  }
  EXPECT_GT(full_rank_seen, 0);
}

TEST(AffineMapTest, Rank) {
  const PrimeField f(3);
  EXPECT_EQ(AffineMap::Zero(f, 3, 2).Rank(), 0u);
  EXPECT_EQ(AffineMap::Projection(f, 3, 2).Rank(), 2u);
  EXPECT_EQ(AffineMap(f, 2, 2, {1, 2, 2, 1}, {0, 0}).Rank(), 1u);  // row 2 = 2 * row 1
}

}  // namespace
}  // namespace scslab

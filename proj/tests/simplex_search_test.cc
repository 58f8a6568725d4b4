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

#include "scslab/simplex_search.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "scslab/rng.h"

namespace scslab {
namespace {

TEST(SimplexProductTest, ProjectionSatisfiesOptimality) {
  const SimplexProduct domain{{3, 4}};
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(7), p(7);
    for (double& e : v) e = 3 * rng.UniformUnit() - 1.5;
    p = v;
    domain.Project(p);
    std::size_t start = 0;
    for (std::size_t b : domain.block_sizes) {
      double sum = 0;
      for (std::size_t i = start; i < start + b; ++i) {
        EXPECT_GE(p[i], 0.0);
        sum += p[i];
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      // p = max(v - theta, 0) with one threshold theta per block.
      double theta = 0;
      for (std::size_t i = start; i < start + b; ++i) {
        if (p[i] > 0) theta = v[i] - p[i];
      }
      for (std::size_t i = start; i < start + b; ++i) {
        EXPECT_NEAR(p[i], std::max(v[i] - theta, 0.0), 1e-12);
      }
      start += b;
    }
  }
}

TEST(SimplexProductTest, Vertices) {
  const SimplexProduct domain{{2, 3}};
  EXPECT_EQ(domain.dimension(), 5u);
  EXPECT_EQ(domain.VertexCount(), 6u);
  for (std::uint64_t i = 0; i < 6; ++i) {
    const std::vector<double> v = domain.Vertex(i);
    EXPECT_EQ(std::accumulate(v.begin(), v.end(), 0.0), 2.0);
  }
  std::vector<double> p{-1, 3, 2, 2, 4};
  domain.Normalize(p);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 1.0);
  EXPECT_DOUBLE_EQ(p[4], 0.5);
}

TEST(MinimizeOverSimplicesTest, InteriorQuadratic) {
  const std::vector<double> target{0.2, 0.5, 0.3, 0.6, 0.4};
  const SimplexProduct domain{{3, 2}};
  const SimplexSearchResult r = MinimizeOverSimplices(
      [&](std::span<const double> x) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - target[i]) * (x[i] - target[i]);
        return s;
      },
      domain);
  EXPECT_NEAR(r.value, 0.0, 1e-10);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.point[i], target[i], 1e-5);
  EXPECT_GT(r.starts_run, 64u);
}

TEST(MinimizeOverSimplicesTest, ConcaveObjectiveReachesBestVertex) {
  // Entropy plus a linear term is concave; its minimum sits at a vertex.
  const SimplexProduct domain{{3, 3}};
  const std::vector<double> weight{1.0, 0.2, 0.7, 0.9, 0.1, 0.5};
  const SimplexSearchResult r = MinimizeOverSimplices(
      [&](std::span<const double> x) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (x[i] > 0) s -= x[i] * std::log(x[i]);
          s += weight[i] * x[i];
        }
        return s;
      },
      domain);
  EXPECT_NEAR(r.value, 0.2 + 0.1, 1e-12);
}

TEST(MinimizeOverSimplicesTest, Deterministic) {
  const SimplexProduct domain{{4}};
  const SimplexObjective f = [](std::span<const double> x) {
    return std::sin(7 * x[0]) + std::cos(5 * x[1]) + x[2] * x[3];
  };
  const SimplexSearchResult a = MinimizeOverSimplices(f, domain);
  const SimplexSearchResult b = MinimizeOverSimplices(f, domain);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.point, b.point);
  EXPECT_GE(a.dispersion, 0.0);
}

}  // namespace
}  // namespace scslab

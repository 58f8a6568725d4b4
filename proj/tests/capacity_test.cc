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

#include "scslab/capacity.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "scslab/rng.h"

namespace scslab {
namespace {

using ::scslab::testing::MutualInformationOracle;
using ::scslab::testing::SimplexGridMax;

double H2(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

TEST(ChannelCapacityTest, BinarySymmetricClosedForm) {
  for (double p : {0.05, 0.1, 0.3}) {
    const CapacityResult r = ChannelCapacity(RowChannel::FromMatrix({{1 - p, p}, {p, 1 - p}}));
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value(), std::log(2.0) - H2(p), 1e-7);
    EXPECT_LE(r.upper - r.lower, 1e-7);
    EXPECT_NEAR(r.input_distribution[0], 0.5, 1e-6);
  }
}

TEST(ChannelCapacityTest, ZChannelClosedForm) {
  // Z channel 0 -> 0, 1 -> {0 w.p. e, 1 w.p. 1 - e}: C = ln(1 + (1 - e) e^{e/(1-e)}).
  const double e = 0.4;
  const CapacityResult r = ChannelCapacity(RowChannel::FromMatrix({{1, 0}, {e, 1 - e}}));
  EXPECT_NEAR(r.value(), std::log(1 + (1 - e) * std::pow(e, e / (1 - e))), 1e-7);
}

TEST(ChannelCapacityTest, NoiselessAndUseless) {
  EXPECT_NEAR(ChannelCapacity(RowChannel::FromMatrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).value(),
              std::log(3.0), 1e-9);
  const CapacityResult useless = ChannelCapacity(RowChannel::FromMatrix({{0.3, 0.7}, {0.3, 0.7}}));
  EXPECT_NEAR(useless.value(), 0.0, 1e-12);
  EXPECT_LE(useless.iterations, 2u);
}

TEST(ChannelCapacityTest, MatchesGridOracleOnRandomChannels) {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::vector<double>> w(trial % 2 ? 3 : 4, std::vector<double>(3));
    for (auto& row : w) {
      double s = 0;
      for (double& v : row) s += (v = rng.UniformUnit() + 0.01);
      for (double& v : row) v /= s;
    }
    const CapacityResult r = ChannelCapacity(RowChannel::FromMatrix(w), {1e-10, 100000});
    const double oracle =
        SimplexGridMax(w.size(), [&](const std::vector<double>& p) { return MutualInformationOracle(w, p); });
    EXPECT_NEAR(r.value(), oracle, 1e-8) << "trial " << trial;
    EXPECT_NEAR(MutualInformationOfInput(RowChannel::FromMatrix(w), r.input_distribution),
                MutualInformationOracle(w, r.input_distribution), 1e-12);
  }
}

TEST(ChannelCapacityTest, RestrictedSupport) {
  const std::vector<std::vector<double>> w{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const std::vector<char> allowed{1, 1, 0};
  const CapacityResult r = ChannelCapacity(RowChannel::FromMatrix(w), {}, allowed);
  EXPECT_NEAR(r.value(), std::log(2.0), 1e-9);
  EXPECT_EQ(r.input_distribution[2], 0.0);
}

TEST(ChannelCapacityTest, SharedRowsAreEquivalentToDenseMatrix) {
  const std::vector<std::vector<double>> rows{{0.8, 0.2}, {0.25, 0.75}};
  RowChannel shared;
  shared.num_rows = 2;
  shared.num_outputs = 2;
  shared.row_of_input = {0, 1, 1, 0, 1};
  shared.fill_row = [&](std::size_t r, std::span<double> out) {
    std::copy(rows[r].begin(), rows[r].end(), out.begin());
  };
  std::vector<std::vector<double>> dense;
  for (std::uint32_t r : shared.row_of_input) dense.push_back(rows[r]);
  EXPECT_NEAR(ChannelCapacity(shared).value(), ChannelCapacity(RowChannel::FromMatrix(dense)).value(),
              1e-9);
}

TEST(ChannelCapacityTest, IterationCapReportsBracket) {
  const CapacityResult r =
      ChannelCapacity(RowChannel::FromMatrix({{0.9, 0.1, 0.0}, {0.1, 0.5, 0.4}, {0.0, 0.2, 0.8}}),
                      {1e-15, 3});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_LE(r.lower, r.upper);
}

}  // namespace
}  // namespace scslab

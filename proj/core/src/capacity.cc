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

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace scslab {
namespace {

// Row weights w_r = sum of p over inputs using row r.
std::vector<double> RowWeights(const RowChannel& ch, std::span<const double> p) {
  std::vector<double> w(ch.num_rows, 0.0);
  for (std::size_t x = 0; x < ch.num_inputs(); ++x) w[ch.row_of_input[x]] += p[x];
  return w;
}

// Output law r = sum_r w_r W_r / sum_r w_r, and D(W_r || r) per row.
void OutputAndDivergences(const RowChannel& ch, std::span<const double> weights,
                          std::vector<double>& output, std::vector<double>& divergence,
                          std::vector<double>& scratch) {
  output.assign(ch.num_outputs, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < ch.num_rows; ++r) {
    if (weights[r] <= 0.0) continue;
    total += weights[r];
    ch.fill_row(r, scratch);
    for (std::size_t y = 0; y < ch.num_outputs; ++y) output[y] += weights[r] * scratch[y];
  }
  for (double& v : output) v /= total;
  divergence.assign(ch.num_rows, 0.0);
  for (std::size_t r = 0; r < ch.num_rows; ++r) {
    ch.fill_row(r, scratch);
    double d = 0.0;
    for (std::size_t y = 0; y < ch.num_outputs; ++y) {
      const double p = scratch[y];
      if (p <= 0.0) continue;
      if (output[y] <= 0.0) {
        d = std::numeric_limits<double>::infinity();
        break;
      }
      d += p * std::log(p / output[y]);
    }
    divergence[r] = d;
  }
}

}  // namespace

RowChannel RowChannel::FromMatrix(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw std::invalid_argument("channel: no rows");
  RowChannel ch;
  ch.num_rows = rows.size();
  ch.num_outputs = rows.front().size();
  ch.row_of_input.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ch.num_outputs) throw std::invalid_argument("channel: ragged rows");
    ch.row_of_input[i] = static_cast<std::uint32_t>(i);
  }
  auto shared = std::make_shared<std::vector<std::vector<double>>>(std::move(rows));
  ch.fill_row = [shared](std::size_t r, std::span<double> out) {
    std::copy((*shared)[r].begin(), (*shared)[r].end(), out.begin());
  };
  return ch;
}

double MutualInformationOfInput(const RowChannel& channel, std::span<const double> input) {
  if (input.size() != channel.num_inputs()) throw std::invalid_argument("input law size");
  const std::vector<double> w = RowWeights(channel, input);
  std::vector<double> out, div, scratch(channel.num_outputs);
  OutputAndDivergences(channel, w, out, div, scratch);
  double total = 0.0;
  double mi = 0.0;
  for (std::size_t r = 0; r < channel.num_rows; ++r) {
    if (w[r] <= 0.0) continue;
    total += w[r];
    mi += w[r] * div[r];
  }
  return std::max(0.0, mi / total);
}

CapacityResult ChannelCapacity(const RowChannel& channel, const CapacityOptions& options,
                               std::span<const char> allowed) {
  const std::size_t nx = channel.num_inputs();
  if (nx == 0) throw std::invalid_argument("capacity: no inputs");
  if (!allowed.empty() && allowed.size() != nx) throw std::invalid_argument("capacity: mask size");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("capacity: tolerance must be positive");

  std::vector<char> usable_row(channel.num_rows, 0);
  std::vector<double> p(nx, 0.0);
  std::size_t count = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    if (allowed.empty() || allowed[x]) {
      ++count;
      usable_row[channel.row_of_input[x]] = 1;
    }
  }
  if (count == 0) throw std::invalid_argument("capacity: empty input set");
  for (std::size_t x = 0; x < nx; ++x) {
    if (allowed.empty() || allowed[x]) p[x] = 1.0 / static_cast<double>(count);
  }

  CapacityResult result;
  std::vector<double> output, divergence, scratch(channel.num_outputs);
  for (std::uint64_t it = 1; it <= options.max_iterations; ++it) {
    const std::vector<double> w = RowWeights(channel, p);
    OutputAndDivergences(channel, w, output, divergence, scratch);
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t r = 0; r < channel.num_rows; ++r) {
      if (w[r] > 0.0) lower += w[r] * divergence[r];
      if (usable_row[r]) upper = std::max(upper, divergence[r]);
    }
    lower = std::max(lower, 0.0);
    result.lower = lower;
    result.upper = upper;
    result.iterations = it;
    result.input_distribution = p;
    if (upper - lower <= options.tolerance) {
      result.converged = true;
      break;
    }
    // p(x) <- p(x) exp(D(W_x || r)) / Z; shift by the max for stability.
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      if (p[x] <= 0.0) continue;
      p[x] *= std::exp(divergence[channel.row_of_input[x]] - upper);
      z += p[x];
    }
    for (double& v : p) v /= z;
  }
  return result;
}

}  // namespace scslab

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

#ifndef SCSLAB_CAPACITY_H_
#define SCSLAB_CAPACITY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace scslab {

// A discrete channel presented row by row. Several inputs may share one row;
// row_of_input maps each input letter to its row. fill_row writes the full
// output law of a row into `out` (length num_outputs).
struct RowChannel {
  std::size_t num_rows = 0;
  std::size_t num_outputs = 0;
  std::vector<std::uint32_t> row_of_input;
  std::function<void(std::size_t row, std::span<double> out)> fill_row;

  std::size_t num_inputs() const { return row_of_input.size(); }

  // Dense row-major matrix, one row per input.
  static RowChannel FromMatrix(std::vector<std::vector<double>> rows);
};

struct CapacityOptions {
  double tolerance = 1e-7;            // stop when upper - lower <= tolerance
  std::uint64_t max_iterations = 100000;
};

struct CapacityResult {
  double lower = 0.0;     // I(p; W) at the returned p
  double upper = 0.0;     // max_x D(W_x || pW), the dual bound
  std::uint64_t iterations = 0;
  bool converged = false;
  std::vector<double> input_distribution;  // over all inputs; zero off the allowed set

  double value() const { return lower; }
};

// Alternating maximization of I(X; Y) over input laws (Blahut-Arimoto),
// started from the uniform law on the allowed inputs. `allowed` (same length
// as inputs) restricts the support; empty means every input.
CapacityResult ChannelCapacity(const RowChannel& channel,
                               const CapacityOptions& options = {},
                               std::span<const char> allowed = {});

// I(X; Y) for an input law over the channel's inputs.
double MutualInformationOfInput(const RowChannel& channel,
                                std::span<const double> input);

}  // namespace scslab

#endif  // SCSLAB_CAPACITY_H_

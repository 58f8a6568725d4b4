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

#ifndef SCSLAB_SIMPLEX_SEARCH_H_
#define SCSLAB_SIMPLEX_SEARCH_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace scslab {

// Minimization over a product of probability simplices, e.g. the rows of a
// test channel. Points are flat vectors; block i occupies block_sizes[i]
// consecutive coordinates summing to one.
struct SimplexProduct {
  std::vector<std::size_t> block_sizes;

  std::size_t dimension() const;
  // Clamp negatives to zero and rescale each block to sum one.
  void Normalize(std::span<double> point) const;
  // Euclidean projection of each block onto its simplex.
  void Project(std::span<double> point) const;
  // Number of points with every block at a vertex.
  std::uint64_t VertexCount() const;
  std::vector<double> Vertex(std::uint64_t index) const;
};

struct SimplexSearchOptions {
  std::size_t starts = 64;              // Halton starts (Dirichlet(1) mapped)
  bool include_vertices = true;         // also start from every vertex combination
  std::uint64_t vertex_cap = 256;
  std::size_t max_iterations = 400;
  double finite_difference_step = 1e-7;
  double tolerance = 1e-13;             // stop on relative improvement below this
  std::uint64_t halton_offset = 1;      // first Halton index used
};

struct SimplexSearchResult {
  double value = 0.0;
  std::vector<double> point;
  double dispersion = 0.0;  // standard deviation of the per-start optima
  std::size_t starts_run = 0;
};

using SimplexObjective = std::function<double(std::span<const double>)>;

// Multi-start projected gradient descent with central-difference gradients
// and Armijo backtracking. The objective only ever sees normalized points.
// Deterministic: the start set depends on the options alone.
SimplexSearchResult MinimizeOverSimplices(const SimplexObjective& objective,
                                          const SimplexProduct& domain,
                                          const SimplexSearchOptions& options = {});

}  // namespace scslab

#endif  // SCSLAB_SIMPLEX_SEARCH_H_

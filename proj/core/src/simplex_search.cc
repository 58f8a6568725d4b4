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
#include <limits>
#include <numeric>
#include <stdexcept>

#include "scslab/rng.h"

namespace scslab {
namespace {

void ProjectBlock(std::span<double> v) {
  // Sort-based projection onto {w >= 0, sum w = 1}.
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
}

struct Descent {
  const SimplexObjective& objective;
  const SimplexProduct& domain;
  const SimplexSearchOptions& options;

  double Evaluate(std::span<const double> x) const {
    std::vector<double> y(x.begin(), x.end());
    domain.Normalize(y);
    const double v = objective(y);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }

  std::vector<double> Gradient(std::vector<double>& x) const {
    std::vector<double> g(x.size());
    const double h = options.finite_difference_step;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double saved = x[i];
      const double lo = std::max(0.0, saved - h);
      const double hi = saved + h;
      x[i] = hi;
      const double fhi = Evaluate(x);
      x[i] = lo;
      const double flo = Evaluate(x);
      x[i] = saved;
      g[i] = (fhi - flo) / (hi - lo);
      if (!std::isfinite(g[i])) g[i] = 0.0;
    }
    return g;
  }

  // Returns the final value; x is updated in place.
  double Run(std::vector<double>& x) const {
    domain.Project(x);
    double fx = Evaluate(x);
    double step = 0.5;
    std::size_t stalls = 0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      const std::vector<double> g = Gradient(x);
      bool accepted = false;
      std::vector<double> trial(x.size());
      while (step > 1e-14) {
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * g[i];
        domain.Project(trial);
        double decrease = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) decrease += g[i] * (x[i] - trial[i]);
        const double ft = Evaluate(trial);
        if (ft <= fx - 1e-4 * decrease && ft < fx) {
          const double improvement = fx - ft;
          x.swap(trial);
          fx = ft;
          accepted = true;
          step = std::min(step * 2.0, 1e3);
          stalls = improvement <= options.tolerance * (1.0 + std::abs(fx)) ? stalls + 1 : 0;
          break;
        }
        step *= 0.5;
      }
      if (!accepted || stalls >= 3) break;
    }
    return fx;
  }
};

}  // namespace

std::size_t SimplexProduct::dimension() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void SimplexProduct::Normalize(std::span<double> point) const {
  std::size_t offset = 0;
  for (std::size_t b : block_sizes) {
    double total = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      double& v = point[offset + i];
      if (!(v > 0.0)) v = 0.0;
      total += v;
    }
    for (std::size_t i = 0; i < b; ++i) {
      point[offset + i] = total > 0.0 ? point[offset + i] / total : 1.0 / static_cast<double>(b);
    }
    offset += b;
  }
}

void SimplexProduct::Project(std::span<double> point) const {
  std::size_t offset = 0;
  for (std::size_t b : block_sizes) {
    ProjectBlock(point.subspan(offset, b));
    offset += b;
  }
}

std::uint64_t SimplexProduct::VertexCount() const {
  std::uint64_t count = 1;
  for (std::size_t b : block_sizes) {
    if (count > (std::uint64_t{1} << 40) / b) return std::uint64_t{1} << 40;
    count *= b;
  }
  return count;
}

std::vector<double> SimplexProduct::Vertex(std::uint64_t index) const {
  std::vector<double> v(dimension(), 0.0);
  std::size_t offset = 0;
  for (std::size_t b : block_sizes) {
    v[offset + index % b] = 1.0;
    index /= b;
    offset += b;
  }
  return v;
}

SimplexSearchResult MinimizeOverSimplices(const SimplexObjective& objective,
                                          const SimplexProduct& domain,
                                          const SimplexSearchOptions& options) {
  const std::size_t dim = domain.dimension();
  if (dim == 0) throw std::invalid_argument("simplex search: empty domain");
  if (dim > 60) throw std::invalid_argument("simplex search: too many coordinates for Halton starts");

  std::vector<std::vector<double>> starts;
  for (std::size_t s = 0; s < options.starts; ++s) {
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double u = RadicalInverse(options.halton_offset + s, NthPrime(i));
      x[i] = -std::log1p(-u);  // exponential draw; normalized blocks are Dirichlet(1)
    }
    domain.Normalize(x);
    starts.push_back(std::move(x));
  }
  if (options.include_vertices && domain.VertexCount() <= options.vertex_cap) {
    for (std::uint64_t v = 0; v < domain.VertexCount(); ++v) starts.push_back(domain.Vertex(v));
  }
  if (starts.empty()) starts.push_back(std::vector<double>(dim, 1.0));

  const Descent descent{objective, domain, options};
  SimplexSearchResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  for (auto& x : starts) {
    // Vertices are evaluated as-is before descending, so an exact corner
    // optimum is never lost to finite-difference noise.
    if (std::count(x.begin(), x.end(), 1.0) == static_cast<std::ptrdiff_t>(domain.block_sizes.size())) {
      const double at_vertex = descent.Evaluate(x);
      if (at_vertex < best.value) {
        best.value = at_vertex;
        best.point = x;
      }
    }
    const double v = descent.Run(x);
    values.push_back(v);
    if (v < best.value) {
      best.value = v;
      best.point = x;
    }
  }
  domain.Normalize(best.point);
  best.starts_run = values.size();
  double mean = 0.0;
  std::size_t finite = 0;
  for (double v : values) {
    if (std::isfinite(v)) {
      mean += v;
      ++finite;
    }
  }
  if (finite > 0) {
    mean /= static_cast<double>(finite);
    double var = 0.0;
    for (double v : values) {
      if (std::isfinite(v)) var += (v - mean) * (v - mean);
    }
    best.dispersion = std::sqrt(var / static_cast<double>(finite));
  }
  return best;
}

}  // namespace scslab

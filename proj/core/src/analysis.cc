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

#include "scslab/analysis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace scslab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double LogSumExp(const std::vector<double>& terms) {
  double hi = -kInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == -kInf) return -kInf;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - hi);
  return hi + std::log(s);
}

TestChannel ChannelFromPoint(std::span<const double> point, std::size_t aux) {
  return TestChannel{aux, std::vector<double>(point.begin(), point.end())};
}

HelperLaw HelperFromPoint(std::span<const double> point, std::size_t aux) {
  HelperLaw q;
  q.aux = aux;
  q.pu.assign(point.begin(), point.begin() + aux);
  q.z_given_u.assign(point.begin() + aux, point.end());
  return q;
}

SimplexProduct ChannelDomain(std::size_t z, std::size_t aux) {
  return SimplexProduct{std::vector<std::size_t>(z, aux)};
}

SimplexProduct HelperDomain(std::size_t z, std::size_t aux) {
  std::vector<std::size_t> blocks{aux};
  blocks.insert(blocks.end(), aux, z);
  return SimplexProduct{blocks};
}

}  // namespace

void ParallelFor(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

KeySideJoint::KeySideJoint(const Pmf& key, const ChannelMatrix& side_channel)
    : key_(key), pz_(side_channel.OutputDistribution(key)) {
  if (side_channel.inputs() != key.size()) {
    throw std::invalid_argument("side channel inputs != key alphabet");
  }
  const std::size_t nk = key.size();
  const std::size_t nz = side_channel.outputs();
  k_given_z_.assign(nz * nk, 0.0);
  for (std::size_t z = 0; z < nz; ++z) {
    double total = 0.0;
    for (std::size_t k = 0; k < nk; ++k) total += key[k] * side_channel(k, z);
    for (std::size_t k = 0; k < nk; ++k) {
      k_given_z_[z * nk + k] =
          total > 0.0 ? key[k] * side_channel(k, z) / total : 1.0 / static_cast<double>(nk);
    }
  }
  h_k_given_z_ =
      ConditionalEntropyRowGivenCol(JointPmf::FromInputAndChannel(key, side_channel));
}

double KeySideJoint::KeyEntropyGivenObservation() const { return h_k_given_z_; }

AuxInformation EvaluateTestChannel(const KeySideJoint& pkz, const TestChannel& ch) {
  const std::size_t nz = pkz.observation_alphabet();
  const std::size_t nk = pkz.key_alphabet();
  std::vector<double> pu(ch.aux, 0.0);
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t u = 0; u < ch.aux; ++u) pu[u] += pkz.observation()[z] * ch(z, u);
  }
  AuxInformation info;
  std::vector<double> pku(nk * ch.aux, 0.0);
  for (std::size_t z = 0; z < nz; ++z) {
    const double p_z = pkz.observation()[z];
    for (std::size_t u = 0; u < ch.aux; ++u) {
      const double puz = p_z * ch(z, u);
      if (puz <= 0.0) continue;
      info.i_zu += puz * std::log(ch(z, u) / pu[u]);
      for (std::size_t k = 0; k < nk; ++k) pku[k * ch.aux + u] += puz * pkz.KeyGivenObservation(k, z);
    }
  }
  info.i_zu = std::max(info.i_zu, 0.0);
  info.h_k_given_u = std::max(Entropy(pku) - Entropy(pu), 0.0);
  return info;
}

RMuResult RMu(const KeySideJoint& pkz, double mu, const AnalysisOptions& options) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  const std::size_t nz = pkz.observation_alphabet();
  auto solve = [&](std::size_t aux) {
    const SimplexObjective objective = [&](std::span<const double> x) {
      const AuxInformation info = EvaluateTestChannel(pkz, ChannelFromPoint(x, aux));
      return mu * info.i_zu + (1.0 - mu) * info.h_k_given_u;
    };
    return MinimizeOverSimplices(objective, ChannelDomain(nz, aux), options.search);
  };
  const SimplexSearchResult best = solve(nz);
  RMuResult r;
  r.mu = mu;
  r.value = best.value;
  r.channel = ChannelFromPoint(best.point, nz);
  r.info = EvaluateTestChannel(pkz, r.channel);
  r.dispersion = best.dispersion;
  r.value_extra_aux = r.value;
  if (options.cardinality_check) {
    r.value_extra_aux = solve(nz + 1).value;
    r.cardinality_sensitive = std::abs(r.value - r.value_extra_aux) > 1e-6;
  }
  return r;
}

const char* MembershipName(Membership m) {
  switch (m) {
    case Membership::kInside:
      return "inside";
    case Membership::kOutside:
      return "outside";
    case Membership::kBoundary:
      return "boundary";
  }
  return "?";
}

std::vector<double> LinearGrid(double lo, double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = hi;
  return g;
}

AkwRegion AkwRegion::Compute(const KeySideJoint& pkz, std::span<const double> mu_grid,
                             const AnalysisOptions& options, std::size_t jobs) {
  AkwRegion region;
  region.planes_.resize(mu_grid.size());
  ParallelFor(mu_grid.size(), jobs,
              [&](std::size_t i) { region.planes_[i] = RMu(pkz, mu_grid[i], options); });
  return region;
}

double AkwRegion::Margin(double ra, double r) const {
  if (ra < 0.0 || r < 0.0) return -kInf;
  double margin = kInf;
  for (const RMuResult& p : planes_) {
    margin = std::min(margin, p.mu * ra + (1.0 - p.mu) * r - p.value);
  }
  return margin;
}

Membership AkwRegion::Classify(double ra, double r, double band) const {
  const double m = Margin(ra, r);
  if (m > band) return Membership::kInside;
  if (m < -band) return Membership::kOutside;
  return Membership::kBoundary;
}

Membership SecureRegionMembership(double ra, double r, double source_entropy,
                                  const AkwRegion& region, double band) {
  if (r < source_entropy - band) return Membership::kOutside;
  const double m = region.Margin(ra, r);
  if (m > band) return Membership::kOutside;
  if (r >= source_entropy + band && m < -band) return Membership::kInside;
  return Membership::kBoundary;
}

double OmegaLogSpace(const KeySideJoint& pkz, const HelperLaw& q, double mu, double alpha) {
  const std::size_t nz = pkz.observation_alphabet();
  const std::size_t nk = pkz.key_alphabet();
  std::vector<double> qz(nz, 0.0);
  std::vector<double> qku(q.aux * nk, 0.0);
  for (std::size_t u = 0; u < q.aux; ++u) {
    for (std::size_t z = 0; z < nz; ++z) {
      const double zu = q.z_given_u[u * nz + z];
      qz[z] += q.pu[u] * zu;
      for (std::size_t k = 0; k < nk; ++k) qku[u * nk + k] += zu * pkz.KeyGivenObservation(k, z);
    }
  }
  const double abar = 1.0 - alpha;
  const double mubar = 1.0 - mu;
  std::vector<double> terms;
  terms.reserve(q.aux * nz * nk);
  for (std::size_t u = 0; u < q.aux; ++u) {
    for (std::size_t z = 0; z < nz; ++z) {
      const double zu = q.z_given_u[u * nz + z];
      for (std::size_t k = 0; k < nk; ++k) {
        const double mass = q.pu[u] * zu * pkz.KeyGivenObservation(k, z);
        if (mass <= 0.0) continue;
        const double p_z = pkz.observation()[z];
        if (p_z <= 0.0) return kInf;
        const double omega = abar * std::log(qz[z] / p_z) +
                             alpha * (mu * std::log(zu / p_z) - mubar * std::log(qku[u * nk + k]));
        terms.push_back(std::log(mass) - omega);
      }
    }
  }
  return -LogSumExp(terms);
}

double OmegaLinear(const KeySideJoint& pkz, const HelperLaw& q, double mu, double alpha) {
  const std::size_t nz = pkz.observation_alphabet();
  const std::size_t nk = pkz.key_alphabet();
  std::vector<double> qz(nz, 0.0);
  std::vector<double> qku(q.aux * nk, 0.0);
  for (std::size_t u = 0; u < q.aux; ++u) {
    for (std::size_t z = 0; z < nz; ++z) {
      const double zu = q.z_given_u[u * nz + z];
      qz[z] += q.pu[u] * zu;
      for (std::size_t k = 0; k < nk; ++k) qku[u * nk + k] += zu * pkz.KeyGivenObservation(k, z);
    }
  }
  double expectation = 0.0;
  for (std::size_t u = 0; u < q.aux; ++u) {
    for (std::size_t z = 0; z < nz; ++z) {
      const double zu = q.z_given_u[u * nz + z];
      for (std::size_t k = 0; k < nk; ++k) {
        const double mass = q.pu[u] * zu * pkz.KeyGivenObservation(k, z);
        if (mass <= 0.0) continue;
        const double p_z = pkz.observation()[z];
        if (p_z <= 0.0) return kInf;
        expectation += mass * std::pow(p_z / qz[z], 1.0 - alpha) *
                       std::pow(p_z / zu, alpha * mu) *
                       std::pow(qku[u * nk + k], alpha * (1.0 - mu));
      }
    }
  }
  return -std::log(expectation);
}

double OmegaTilde(const KeySideJoint& pkz, const TestChannel& ch, double mu, double lambda) {
  const std::size_t nz = pkz.observation_alphabet();
  const std::size_t nk = pkz.key_alphabet();
  std::vector<double> pu(ch.aux, 0.0);
  std::vector<double> pku(ch.aux * nk, 0.0);
  for (std::size_t z = 0; z < nz; ++z) {
    const double p_z = pkz.observation()[z];
    for (std::size_t u = 0; u < ch.aux; ++u) {
      pu[u] += p_z * ch(z, u);
      for (std::size_t k = 0; k < nk; ++k) {
        pku[u * nk + k] += p_z * ch(z, u) * pkz.KeyGivenObservation(k, z);
      }
    }
  }
  const double mubar = 1.0 - mu;
  std::vector<double> terms;
  terms.reserve(ch.aux * nz * nk);
  for (std::size_t z = 0; z < nz; ++z) {
    const double p_z = pkz.observation()[z];
    for (std::size_t u = 0; u < ch.aux; ++u) {
      const double uz = ch(z, u);
      for (std::size_t k = 0; k < nk; ++k) {
        const double mass = p_z * uz * pkz.KeyGivenObservation(k, z);
        if (mass <= 0.0) continue;
        // p_{Z|U}(z|u) / p_Z(z) = p_{U|Z}(u|z) / p_U(u).
        const double omega = mu * std::log(uz / pu[u]) -
                             mubar * std::log(pku[u * nk + k] / pu[u]);
        terms.push_back(std::log(mass) - lambda * omega);
      }
    }
  }
  return -LogSumExp(terms);
}

InnerMinimum MinimizeOmega(const KeySideJoint& pkz, double mu, double alpha,
                           const AnalysisOptions& options) {
  const std::size_t aux = pkz.observation_alphabet();
  const SimplexObjective objective = [&](std::span<const double> x) {
    return OmegaLogSpace(pkz, HelperFromPoint(x, aux), mu, alpha);
  };
  const SimplexSearchResult r =
      MinimizeOverSimplices(objective, HelperDomain(pkz.observation_alphabet(), aux), options.search);
  return {r.value, r.dispersion, r.point};
}

InnerMinimum MinimizeOmegaTilde(const KeySideJoint& pkz, double mu, double lambda,
                                const AnalysisOptions& options) {
  const std::size_t aux = pkz.observation_alphabet();
  const SimplexObjective objective = [&](std::span<const double> x) {
    return OmegaTilde(pkz, ChannelFromPoint(x, aux), mu, lambda);
  };
  const SimplexSearchResult r =
      MinimizeOverSimplices(objective, ChannelDomain(pkz.observation_alphabet(), aux), options.search);
  return {r.value, r.dispersion, r.point};
}

ExponentEvaluator::ExponentEvaluator(KeySideJoint pkz, ExponentGrid grid,
                                     AnalysisOptions options, std::size_t jobs)
    : pkz_(std::move(pkz)), grid_(grid), options_(std::move(options)), jobs_(jobs) {
  Precompute();
}

std::vector<double> ExponentEvaluator::LambdaValues() const {
  std::vector<double> lambdas = LinearGrid(0.0, grid_.lambda_max, grid_.lambda_points);
  for (std::size_t j = 1; j <= grid_.small_lambda_levels; ++j) {
    lambdas.push_back(grid_.lambda_max * std::ldexp(1.0, -static_cast<int>(j)));
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  return lambdas;
}

void ExponentEvaluator::Precompute() {
  const std::vector<double> mus = LinearGrid(0.0, 1.0, grid_.mu_points);
  const std::vector<double> alphas = LinearGrid(0.0, 1.0, grid_.alpha_points);
  const std::vector<double> lambdas = LambdaValues();
  std::vector<std::pair<double, double>> omega_points, tilde_points;
  for (double mu : mus) {
    for (double a : alphas) omega_points.emplace_back(mu, a);
    for (double l : lambdas) tilde_points.emplace_back(mu, l);
  }
  const std::size_t total = omega_points.size() + tilde_points.size();
  std::vector<double> values(total);
  ParallelFor(total, jobs_, [&](std::size_t i) {
    if (i < omega_points.size()) {
      const auto [mu, a] = omega_points[i];
      values[i] = a == 0.0 ? 0.0 : MinimizeOmega(pkz_, mu, a, options_).value;
    } else {
      const auto [mu, l] = tilde_points[i - omega_points.size()];
      values[i] = l == 0.0 ? 0.0 : MinimizeOmegaTilde(pkz_, mu, l, options_).value;
    }
  });
  for (std::size_t i = 0; i < omega_points.size(); ++i) omega_cache_[omega_points[i]] = values[i];
  for (std::size_t i = 0; i < tilde_points.size(); ++i) {
    omega_tilde_cache_[tilde_points[i]] = values[omega_points.size() + i];
  }
}

double ExponentEvaluator::Omega(double mu, double alpha) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = omega_cache_.find({mu, alpha}); it != omega_cache_.end()) return it->second;
  }
  // With alpha = 0 the expectation is sum_z p_Z(z) = 1 for any full-support q_Z.
  const double v = alpha == 0.0 ? 0.0 : MinimizeOmega(pkz_, mu, alpha, options_).value;
  std::lock_guard<std::mutex> lock(mutex_);
  omega_cache_[{mu, alpha}] = v;
  return v;
}

double ExponentEvaluator::OmegaTildeMin(double mu, double lambda) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = omega_tilde_cache_.find({mu, lambda}); it != omega_tilde_cache_.end()) {
      return it->second;
    }
  }
  const double v = lambda == 0.0 ? 0.0 : MinimizeOmegaTilde(pkz_, mu, lambda, options_).value;
  std::lock_guard<std::mutex> lock(mutex_);
  omega_tilde_cache_[{mu, lambda}] = v;
  return v;
}

namespace {

// Sup over a 2-D box by grid followed by local zoom rounds. `value(x, y)`
// evaluates the objective.
template <typename Fn>
ExponentValue GridSup(const std::vector<double>& xs, const std::vector<double>& ys,
                      double x_hi, double y_hi, std::size_t rounds, double zoom, Fn&& value) {
  ExponentValue best{-kInf, 0.0, 0.0};
  for (double x : xs) {
    for (double y : ys) {
      const double v = value(x, y);
      if (v > best.value) best = {v, x, y};
    }
  }
  double wx = x_hi / static_cast<double>(xs.size() - 1);
  double wy = y_hi / static_cast<double>(ys.size() - 1);
  static constexpr double kOffsets[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t round = 0; round < rounds; ++round) {
    const ExponentValue center = best;
    for (double dx : kOffsets) {
      for (double dy : kOffsets) {
        const double x = std::clamp(center.mu + dx * wx, 0.0, x_hi);
        const double y = std::clamp(center.second + dy * wy, 0.0, y_hi);
        const double v = value(x, y);
        if (v > best.value) best = {v, x, y};
      }
    }
    wx /= zoom;
    wy /= zoom;
  }
  return best;
}

}  // namespace

ExponentValue ExponentEvaluator::F(double ra, double r) {
  if (ra < 0.0 || r < 0.0) throw std::invalid_argument("rates must be non-negative");
  return GridSup(LinearGrid(0.0, 1.0, grid_.mu_points), LinearGrid(0.0, 1.0, grid_.alpha_points),
                 1.0, 1.0, grid_.refinement_rounds, grid_.zoom, [&](double mu, double alpha) {
                   const double mubar = 1.0 - mu;
                   return (Omega(mu, alpha) - alpha * (mu * ra + mubar * r)) /
                          (2.0 + alpha * mubar);
                 });
}

ExponentValue ExponentEvaluator::FLower(double ra, double r) {
  if (ra < 0.0 || r < 0.0) throw std::invalid_argument("rates must be non-negative");
  return GridSup(LinearGrid(0.0, 1.0, grid_.mu_points), LambdaValues(), 1.0, grid_.lambda_max,
                 grid_.refinement_rounds, grid_.zoom, [&](double mu, double lambda) {
                   return (OmegaTildeMin(mu, lambda) - lambda * (mu * ra + (1.0 - mu) * r)) /
                          (2.0 + lambda * (5.0 - mu));
                 });
}

ThresholdWitness ExponentEvaluator::FindThresholdWitness(double ra, double r, double tau) {
  ThresholdWitness best;
  double best_margin = -kInf;
  for (double mu : LinearGrid(0.0, 1.0, grid_.mu_points)) {
    for (double lambda : LambdaValues()) {
      if (lambda <= 0.0) continue;
      const double denom = 2.0 + lambda * (5.0 - mu);
      const double objective =
          (OmegaTildeMin(mu, lambda) - lambda * (mu * ra + (1.0 - mu) * r)) / denom;
      const double threshold = 0.5 * tau * lambda / denom;
      if (objective - threshold > best_margin) {
        best_margin = objective - threshold;
        best = {objective > threshold, lambda, mu, objective, threshold};
      }
    }
  }
  return best;
}

double ExponentF(double ra, double r, const KeySideJoint& pkz, const ExponentGrid& grid,
                 const AnalysisOptions& options) {
  ExponentEvaluator ev(pkz, grid, options);
  return ev.F(ra, r).value;
}

double ExponentFLower(double ra, double r, const KeySideJoint& pkz, const ExponentGrid& grid,
                      const AnalysisOptions& options) {
  ExponentEvaluator ev(pkz, grid, options);
  return ev.FLower(ra, r).value;
}

}  // namespace scslab

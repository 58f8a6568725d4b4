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

#ifndef SCSLAB_ANALYSIS_H_
#define SCSLAB_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "scslab/probability.h"
#include "scslab/simplex_search.h"

// Rate-region and exponent functions of the one-helper (Ahlswede-Korner-Wyner)
// problem for a key K observed through a side channel Z.
namespace scslab {

// Joint law of (K, Z) with the derived marginals and p_{K|Z}.
class KeySideJoint {
 public:
  KeySideJoint(const Pmf& key, const ChannelMatrix& side_channel);

  std::size_t key_alphabet() const { return key_.size(); }
  std::size_t observation_alphabet() const { return pz_.size(); }
  const Pmf& key() const { return key_; }
  const Pmf& observation() const { return pz_; }
  double KeyGivenObservation(std::size_t k, std::size_t z) const {
    return k_given_z_[z * key_.size() + k];
  }
  double KeyEntropy() const { return Entropy(key_); }
  double KeyEntropyGivenObservation() const;

 private:
  Pmf key_;
  Pmf pz_;
  std::vector<double> k_given_z_;  // [z * |K| + k]; uniform rows where p_Z(z) = 0
  double h_k_given_z_ = 0.0;
};

// Test channel p_{U|Z}: |Z| rows over an auxiliary alphabet of size aux.
struct TestChannel {
  std::size_t aux = 0;
  std::vector<double> rows;  // [z * aux + u]

  double operator()(std::size_t z, std::size_t u) const { return rows[z * aux + u]; }
};

struct AuxInformation {
  double i_zu = 0.0;  // I(Z; U)
  double h_k_given_u = 0.0;  // H(K | U)
};

AuxInformation EvaluateTestChannel(const KeySideJoint& pkz, const TestChannel& channel);

struct RMuResult {
  double mu = 0.0;
  double value = 0.0;  // R^(mu)
  TestChannel channel;  // minimizer
  AuxInformation info;  // (I(Z;U), H(K|U)) at the minimizer: a supporting point
  double dispersion = 0.0;
  double value_extra_aux = 0.0;  // same minimum with |U| = |Z| + 1
  bool cardinality_sensitive = false;  // |value - value_extra_aux| > 1e-6
};

struct AnalysisOptions {
  SimplexSearchOptions search;
  bool cardinality_check = true;  // rerun with one extra auxiliary letter
};

// R^(mu) = min over p_{U|Z}, |U| <= |Z|, of mu I(Z;U) + (1 - mu) H(K|U).
RMuResult RMu(const KeySideJoint& pkz, double mu, const AnalysisOptions& options = {});

enum class Membership { kInside, kOutside, kBoundary };
const char* MembershipName(Membership m);

// Supporting-hyperplane reconstruction of the AKW region:
//   { (R_A, R) >= 0 : mu R_A + (1 - mu) R >= R^(mu) for every mu in the grid }.
class AkwRegion {
 public:
  static AkwRegion Compute(const KeySideJoint& pkz, std::span<const double> mu_grid,
                           const AnalysisOptions& options = {}, std::size_t jobs = 1);

  const std::vector<RMuResult>& hyperplanes() const { return planes_; }
  // min over the grid of mu R_A + (1 - mu) R - R^(mu); -inf for negative rates.
  double Margin(double ra, double r) const;
  Membership Classify(double ra, double r, double band = 1e-6) const;

 private:
  std::vector<RMuResult> planes_;
};

// Evenly spaced grid on [lo, hi] including both ends.
std::vector<double> LinearGrid(double lo, double hi, std::size_t points);

// Classification in the reliable-and-secure region
//   { R >= H(X) } intersected with the closure of the AKW complement.
Membership SecureRegionMembership(double ra, double r, double source_entropy,
                                  const AkwRegion& region, double band = 1e-6);

// Auxiliary law q = q_U q_{Z|U} p_{K|Z} in Q(p_{K|Z}).
struct HelperLaw {
  std::size_t aux = 0;
  std::vector<double> pu;           // q_U
  std::vector<double> z_given_u;    // [u * |Z| + z]
};

// Omega^(mu,alpha)(q | p_Z) = -ln E_q exp(-omega), in log space and directly.
// +infinity when q_Z puts mass where p_Z does not.
double OmegaLogSpace(const KeySideJoint& pkz, const HelperLaw& q, double mu, double alpha);
double OmegaLinear(const KeySideJoint& pkz, const HelperLaw& q, double mu, double alpha);

// Omega-tilde^(mu,lambda)(p) with p = p_{U|Z} p_{KZ} in P_sh; the key term of
// omega-tilde carries the weight 1 - mu.
double OmegaTilde(const KeySideJoint& pkz, const TestChannel& channel, double mu,
                  double lambda);

struct InnerMinimum {
  double value = 0.0;
  double dispersion = 0.0;
  std::vector<double> point;
};
InnerMinimum MinimizeOmega(const KeySideJoint& pkz, double mu, double alpha,
                           const AnalysisOptions& options = {});
InnerMinimum MinimizeOmegaTilde(const KeySideJoint& pkz, double mu, double lambda,
                                const AnalysisOptions& options = {});

struct ExponentGrid {
  std::size_t mu_points = 21;
  std::size_t alpha_points = 21;
  std::size_t lambda_points = 40;
  double lambda_max = 5.0;
  // Extra lambda values lambda_max * 2^-j, j = 1..small_lambda_levels, so the
  // lower exponent also sees the lambda -> 0 regime.
  std::size_t small_lambda_levels = 12;
  std::size_t refinement_rounds = 2;
  double zoom = 5.0;
};

struct ExponentValue {
  double value = 0.0;
  double mu = 0.0;
  double second = 0.0;  // alpha for F, lambda for F-lower
};

struct ThresholdWitness {
  bool found = false;
  double lambda = 0.0;
  double mu = 0.0;
  double objective = 0.0;  // F-lower objective at (lambda, mu)
  double threshold = 0.0;  // (tau / 2) lambda / (2 + lambda (5 - mu))
};

// Evaluates F and F-lower for many rate points of one p_KZ. The inner minima
// Omega(p_KZ) and Omega-tilde(p_KZ) do not depend on the rates and are cached
// per grid point; refinement points are added to the cache on demand.
class ExponentEvaluator {
 public:
  ExponentEvaluator(KeySideJoint pkz, ExponentGrid grid, AnalysisOptions options = {},
                    std::size_t jobs = 1);

  const KeySideJoint& joint() const { return pkz_; }
  const ExponentGrid& grid() const { return grid_; }

  double Omega(double mu, double alpha);
  double OmegaTildeMin(double mu, double lambda);

  ExponentValue F(double ra, double r);
  ExponentValue FLower(double ra, double r);
  // Searches the F-lower grid for (lambda, mu), lambda > 0, maximizing
  // objective - threshold.
  ThresholdWitness FindThresholdWitness(double ra, double r, double tau);

  std::vector<double> LambdaValues() const;

 private:
  void Precompute();

  KeySideJoint pkz_;
  ExponentGrid grid_;
  AnalysisOptions options_;
  std::size_t jobs_;
  std::mutex mutex_;
  std::map<std::pair<double, double>, double> omega_cache_;
  std::map<std::pair<double, double>, double> omega_tilde_cache_;
};

double ExponentF(double ra, double r, const KeySideJoint& pkz, const ExponentGrid& grid = {},
                 const AnalysisOptions& options = {});
double ExponentFLower(double ra, double r, const KeySideJoint& pkz,
                      const ExponentGrid& grid = {}, const AnalysisOptions& options = {});

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void ParallelFor(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace scslab

#endif  // SCSLAB_ANALYSIS_H_

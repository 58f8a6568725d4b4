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

#ifndef SCSLAB_LEAKAGE_H_
#define SCSLAB_LEAKAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scslab/adversary.h"
#include "scslab/capacity.h"
#include "scslab/crypto.h"
#include "scslab/probability.h"

namespace scslab {

// The stochastic matrices Gamma[x](c | a) = Pr[C^m = c | M_A = a, X^n = x]
// together with p(a) = Pr[M_A = a].
//
// Because (K, M_A) is independent of X and C = keymap(K) + phi(x), every
// Gamma[x] is a shift of the joint law of (keymap(K), M_A) by phi(x): inputs
// with the same codeword share one row. The kernel stores that joint law and
// the shifts; individual rows may be overridden to build corrupted kernels.
class GammaKernel {
 public:
  static constexpr std::uint64_t kDefaultEntryCap = std::uint64_t{1} << 26;

  // Exact kernel for a cryptosystem under side channel `sc`, helper `adversary`
  // and key law `key` (i.i.d.). Throws std::length_error when the logical table
  // q^n * q^m * |M_A| exceeds `entry_cap`.
  static GammaKernel Build(const Cryptosystem& sys, const AdversaryEncoder& adversary,
                           const SideChannel& sc, const Pmf& key,
                           std::uint64_t entry_cap = kDefaultEntryCap);

  std::uint64_t num_sources() const { return source_codeword_.size(); }
  std::uint64_t num_codewords() const { return codewords_; }
  std::uint64_t num_messages() const { return message_prob_.size(); }
  std::size_t code_length() const { return m_; }
  std::uint32_t alphabet_size() const { return q_; }

  double MessageProbability(std::uint64_t a) const { return message_prob_[a]; }
  std::span<const double> message_probabilities() const { return message_prob_; }
  // Pr[keymap(K) = kt, M_A = a].
  double KeyMessageJoint(std::uint64_t kt, std::uint64_t a) const {
    return joint_[kt * num_messages() + a];
  }
  std::span<const double> key_message_joint() const { return joint_; }

  // Gamma[x](c | a); zero for messages with p(a) = 0.
  double Gamma(std::uint64_t x, std::uint64_t c, std::uint64_t a) const;

  // Augmented channel x -> (c, a) with law p(a) Gamma[x](c | a). Output index
  // is a * q^m + c.
  RowChannel AugmentedChannel() const;

  // Sets Gamma[x](c | a) += delta for this x only (other inputs keep the
  // shared row). For mutation tests.
  void Perturb(std::uint64_t x, std::uint64_t c, std::uint64_t a, double delta);

 private:
  GammaKernel() = default;

  std::size_t m_ = 0;
  std::uint32_t q_ = 0;
  std::uint64_t codewords_ = 0;
  std::vector<double> joint_;          // [kt * |M_A| + a]
  std::vector<double> message_prob_;   // p(a)
  std::vector<std::uint32_t> source_codeword_;  // phi(x) index
  std::vector<std::uint32_t> sub_table_;        // [c * q^m + s] = c - s
  std::map<std::uint64_t, std::vector<double>> overrides_;  // x -> Gamma[x] as [a * q^m + c]
};

// Delta_MI = I(X^n; C^m, M_A), computed from the augmented channel.
double DeltaMi(const GammaKernel& kernel, std::span<const double> source);
// Same quantity as sum_x p(x) sum_a p(a) D(Gamma[x](.|a) || Gamma_p(.|a)),
// with Gamma_p(.|a) = sum_x p(x) Gamma[x](.|a).
double DeltaMiDivergenceForm(const GammaKernel& kernel, std::span<const double> source);

struct MaxLeakage {
  CapacityResult unrestricted;  // inputs over X^n
  CapacityResult restricted;    // inputs over D only
  double value() const { return unrestricted.lower; }
};

// Delta_max-MI: capacity of x -> (C^m, M_A), which equals
// max_p I(C^m; X^n | M_A) since X is independent of M_A. The D-restricted
// optimum is computed alongside when `with_restricted` is set.
MaxLeakage DeltaMaxMi(const GammaKernel& kernel, const UniversalCode& code,
                      const CapacityOptions& options = {}, bool with_restricted = true);

// max(0, m ln q - H(K^n | M_A)).
double DeltaMaxLowerBound(const Cryptosystem& sys, const AdversaryEncoder& adversary,
                          const SideChannel& sc, const Pmf& key);
// m ln q - H(keymap(K^n) | M_A), from the kernel's joint law.
double DeltaMaxUpperBound(const GammaKernel& kernel);

struct KernelCheckFailure {
  std::string property;  // "row_sum" or "uniform_ciphertext"
  std::uint64_t c = 0;
  std::uint64_t a = 0;
  double value = 0.0;
};

struct KernelCheckReport {
  double max_row_sum_error = 0.0;
  double max_uniformity_error = 0.0;
  std::vector<KernelCheckFailure> failures;
  bool passed() const { return failures.empty(); }
};

// (a) sum_{x in D} Gamma[x](c | a) = 1 for every (c, a) with p(a) > 0;
// (b) with X uniform on D, C^m is uniform on X^m and independent of M_A.
KernelCheckReport CheckKernelStructure(const GammaKernel& kernel, const UniversalCode& code,
                                       double tolerance = 1e-10);

struct LeakageReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t q = 0;
  double adversary_rate = 0.0;
  double rate = 0.0;
  double delta_mi = 0.0;
  double delta_max = 0.0;
  double delta_max_restricted = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
  double tolerance = 0.0;
  std::vector<double> argmax;  // one maximizing input law over X^n
};

LeakageReport ComputeLeakage(const Cryptosystem& sys, const AdversaryEncoder& adversary,
                             const SideChannel& sc, const Pmf& key, const Pmf& source,
                             const CapacityOptions& options = {});

// CSV: n,m,q,RA,R,delta_mi,delta_max,lb,ub,iters,tol
std::string LeakageCsvHeader();
std::string LeakageCsvRow(const LeakageReport& r);

}  // namespace scslab

#endif  // SCSLAB_LEAKAGE_H_

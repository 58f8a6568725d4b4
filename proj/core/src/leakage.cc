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

#include "scslab/leakage.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scslab/format.h"

namespace scslab {

GammaKernel GammaKernel::Build(const Cryptosystem& sys, const AdversaryEncoder& adversary,
                               const SideChannel& sc, const Pmf& key,
                               std::uint64_t entry_cap) {
  const std::size_t n = sys.block_length();
  const std::uint32_t q = sys.alphabet_size();
  if (adversary.block_length() != n) {
    throw std::invalid_argument("adversary block length differs from the cryptosystem's");
  }
  if (sc.key_alphabet() != q || key.size() != q) {
    throw std::invalid_argument("key and side-channel input alphabets must equal the field");
  }
  const std::uint64_t sources = sys.code().source_space_size();
  const std::uint64_t codewords = sys.code().codeword_space_size();
  const std::uint64_t messages = adversary.message_count();
  const double logical = static_cast<double>(sources) * static_cast<double>(codewords) *
                         static_cast<double>(messages);
  if (logical > static_cast<double>(entry_cap)) {
    throw std::length_error(
        "Gamma kernel would need " + FormatNumber(logical) +
        " entries; use a scalar (product-form) adversary or a smaller n");
  }

  GammaKernel kernel;
  kernel.m_ = sys.code_length();
  kernel.q_ = q;
  kernel.codewords_ = codewords;
  kernel.joint_.assign(codewords * messages, 0.0);

  // Key probabilities as plain products so that uniform keys are exact.
  const std::vector<double> pk = ProductDistribution(key, n).Materialize();
  for (std::uint64_t k = 0; k < sources; ++k) {
    if (pk[k] <= 0.0) continue;
    const std::uint64_t kt = sys.KeyCodewordIndex(k);
    const std::vector<double> lik =
        adversary.MessageLikelihoods(sc, IndexToSequence(k, n, q));
    for (std::uint64_t a = 0; a < messages; ++a) {
      kernel.joint_[kt * messages + a] += pk[k] * lik[a];
    }
  }
  kernel.message_prob_.assign(messages, 0.0);
  for (std::uint64_t kt = 0; kt < codewords; ++kt) {
    for (std::uint64_t a = 0; a < messages; ++a) {
      kernel.message_prob_[a] += kernel.joint_[kt * messages + a];
    }
  }
  kernel.source_codeword_.resize(sources);
  for (std::uint64_t x = 0; x < sources; ++x) {
    kernel.source_codeword_[x] = static_cast<std::uint32_t>(sys.code().EncodeIndex(x));
  }
  kernel.sub_table_.resize(codewords * codewords);
  for (std::uint64_t c = 0; c < codewords; ++c) {
    for (std::uint64_t s = 0; s < codewords; ++s) {
      kernel.sub_table_[c * codewords + s] =
          static_cast<std::uint32_t>(SubIndices(c, s, kernel.m_, q));
    }
  }
  return kernel;
}

double GammaKernel::Gamma(std::uint64_t x, std::uint64_t c, std::uint64_t a) const {
  if (x >= num_sources() || c >= codewords_ || a >= num_messages()) {
    throw std::out_of_range("Gamma index");
  }
  if (auto it = overrides_.find(x); it != overrides_.end()) {
    return it->second[a * codewords_ + c];
  }
  const double pa = message_prob_[a];
  if (pa <= 0.0) return 0.0;
  const std::uint64_t kt = sub_table_[c * codewords_ + source_codeword_[x]];
  return joint_[kt * num_messages() + a] / pa;
}

RowChannel GammaKernel::AugmentedChannel() const {
  RowChannel ch;
  ch.num_outputs = codewords_ * num_messages();
  ch.num_rows = codewords_ + overrides_.size();
  ch.row_of_input.assign(source_codeword_.begin(), source_codeword_.end());
  std::vector<std::uint64_t> override_inputs;
  for (const auto& [x, row] : overrides_) {
    ch.row_of_input[x] = static_cast<std::uint32_t>(codewords_ + override_inputs.size());
    override_inputs.push_back(x);
  }
  ch.fill_row = [this, override_inputs](std::size_t r, std::span<double> out) {
    const std::uint64_t messages = num_messages();
    if (r < codewords_) {
      for (std::uint64_t a = 0; a < messages; ++a) {
        for (std::uint64_t c = 0; c < codewords_; ++c) {
          const std::uint64_t kt = sub_table_[c * codewords_ + r];
          out[a * codewords_ + c] = joint_[kt * messages + a];
        }
      }
      return;
    }
    const std::vector<double>& g = overrides_.at(override_inputs[r - codewords_]);
    for (std::uint64_t a = 0; a < messages; ++a) {
      for (std::uint64_t c = 0; c < codewords_; ++c) {
        out[a * codewords_ + c] = message_prob_[a] * g[a * codewords_ + c];
      }
    }
  };
  return ch;
}

void GammaKernel::Perturb(std::uint64_t x, std::uint64_t c, std::uint64_t a, double delta) {
  if (x >= num_sources() || c >= codewords_ || a >= num_messages()) {
    throw std::out_of_range("Perturb index");
  }
  auto it = overrides_.find(x);
  if (it == overrides_.end()) {
    std::vector<double> row(codewords_ * num_messages());
    for (std::uint64_t aa = 0; aa < num_messages(); ++aa) {
      for (std::uint64_t cc = 0; cc < codewords_; ++cc) row[aa * codewords_ + cc] = Gamma(x, cc, aa);
    }
    it = overrides_.emplace(x, std::move(row)).first;
  }
  it->second[a * codewords_ + c] += delta;
}

double DeltaMi(const GammaKernel& kernel, std::span<const double> source) {
  return MutualInformationOfInput(kernel.AugmentedChannel(), source);
}

double DeltaMiDivergenceForm(const GammaKernel& kernel, std::span<const double> source) {
  const std::uint64_t nx = kernel.num_sources();
  const std::uint64_t nc = kernel.num_codewords();
  const std::uint64_t na = kernel.num_messages();
  if (source.size() != nx) throw std::invalid_argument("source law must cover X^n");
  double total = 0.0;
  for (double p : source) total += p;
  std::vector<double> mixture(na * nc, 0.0);
  for (std::uint64_t x = 0; x < nx; ++x) {
    if (source[x] <= 0.0) continue;
    for (std::uint64_t a = 0; a < na; ++a) {
      for (std::uint64_t c = 0; c < nc; ++c) {
        mixture[a * nc + c] += source[x] * kernel.Gamma(x, c, a);
      }
    }
  }
  for (double& v : mixture) v /= total;
  double leak = 0.0;
  for (std::uint64_t x = 0; x < nx; ++x) {
    if (source[x] <= 0.0) continue;
    double inner = 0.0;
    for (std::uint64_t a = 0; a < na; ++a) {
      const double pa = kernel.MessageProbability(a);
      if (pa <= 0.0) continue;
      double d = 0.0;
      for (std::uint64_t c = 0; c < nc; ++c) {
        const double g = kernel.Gamma(x, c, a);
        if (g > 0.0) d += g * std::log(g / mixture[a * nc + c]);
      }
      inner += pa * d;
    }
    leak += source[x] / total * inner;
  }
  return std::max(leak, 0.0);
}

MaxLeakage DeltaMaxMi(const GammaKernel& kernel, const UniversalCode& code,
                      const CapacityOptions& options, bool with_restricted) {
  const RowChannel ch = kernel.AugmentedChannel();
  MaxLeakage out;
  out.unrestricted = ChannelCapacity(ch, options);
  if (with_restricted) {
    std::vector<char> in_d(kernel.num_sources(), 0);
    for (std::uint64_t x = 0; x < kernel.num_sources(); ++x) in_d[x] = code.InDecodingSet(x);
    out.restricted = ChannelCapacity(ch, options, in_d);
  }
  return out;
}

double DeltaMaxLowerBound(const Cryptosystem& sys, const AdversaryEncoder& adversary,
                          const SideChannel& sc, const Pmf& key) {
  const double full = static_cast<double>(sys.code_length()) *
                      std::log(static_cast<double>(sys.alphabet_size()));
  return std::max(0.0, full - adversary.ConditionalKeyEntropy(sc, key));
}

double DeltaMaxUpperBound(const GammaKernel& kernel) {
  const double full = static_cast<double>(kernel.code_length()) *
                      std::log(static_cast<double>(kernel.alphabet_size()));
  const double conditional =
      Entropy(kernel.key_message_joint()) - Entropy(kernel.message_probabilities());
  return full - conditional;
}

KernelCheckReport CheckKernelStructure(const GammaKernel& kernel, const UniversalCode& code,
                                       double tolerance) {
  KernelCheckReport report;
  std::vector<std::uint64_t> members;
  for (std::uint64_t x = 0; x < kernel.num_sources(); ++x) {
    if (code.InDecodingSet(x)) members.push_back(x);
  }
  const std::uint64_t nc = kernel.num_codewords();
  const double uniform = 1.0 / static_cast<double>(nc);
  std::vector<double> cipher_marginal(nc, 0.0);
  bool row_sum_reported = false;
  bool uniform_reported = false;
  for (std::uint64_t a = 0; a < kernel.num_messages(); ++a) {
    const double pa = kernel.MessageProbability(a);
    if (pa <= 0.0) continue;
    for (std::uint64_t c = 0; c < nc; ++c) {
      double sum = 0.0;
      for (std::uint64_t x : members) sum += kernel.Gamma(x, c, a);
      const double row_error = std::abs(sum - 1.0);
      report.max_row_sum_error = std::max(report.max_row_sum_error, row_error);
      if (row_error > tolerance && !row_sum_reported) {
        report.failures.push_back({"row_sum", c, a, sum});
        row_sum_reported = true;
      }
      // X uniform on D: Pr[C = c | M_A = a] = sum / |D|.
      const double conditional = members.empty() ? 0.0 : sum / static_cast<double>(members.size());
      cipher_marginal[c] += pa * conditional;
      const double uniform_error = std::abs(conditional - uniform);
      report.max_uniformity_error = std::max(report.max_uniformity_error, uniform_error);
      if (uniform_error > tolerance && !uniform_reported) {
        report.failures.push_back({"uniform_ciphertext", c, a, conditional});
        uniform_reported = true;
      }
    }
  }
  for (std::uint64_t c = 0; c < nc; ++c) {
    const double err = std::abs(cipher_marginal[c] - uniform);
    report.max_uniformity_error = std::max(report.max_uniformity_error, err);
    if (err > tolerance && !uniform_reported) {
      report.failures.push_back({"uniform_ciphertext", c, kernel.num_messages(), cipher_marginal[c]});
      uniform_reported = true;
    }
  }
  return report;
}

LeakageReport ComputeLeakage(const Cryptosystem& sys, const AdversaryEncoder& adversary,
                             const SideChannel& sc, const Pmf& key, const Pmf& source,
                             const CapacityOptions& options) {
  const GammaKernel kernel = GammaKernel::Build(sys, adversary, sc, key);
  const std::vector<double> px = ProductDistribution(source, sys.block_length()).Materialize();
  LeakageReport r;
  r.n = sys.block_length();
  r.m = sys.code_length();
  r.q = sys.alphabet_size();
  r.adversary_rate = adversary.rate();
  r.rate = sys.code().rate();
  r.delta_mi = DeltaMi(kernel, px);
  const MaxLeakage max = DeltaMaxMi(kernel, sys.code(), options);
  r.delta_max = max.value();
  r.delta_max_restricted = max.restricted.lower;
  r.bracket_lower = max.unrestricted.lower;
  r.bracket_upper = max.unrestricted.upper;
  r.iterations = max.unrestricted.iterations;
  r.converged = max.unrestricted.converged;
  r.argmax = max.unrestricted.input_distribution;
  r.tolerance = options.tolerance;
  r.lower_bound = DeltaMaxLowerBound(sys, adversary, sc, key);
  r.upper_bound = DeltaMaxUpperBound(kernel);
  return r;
}

std::string LeakageCsvHeader() { return "n,m,q,RA,R,delta_mi,delta_max,lb,ub,iters,tol"; }

std::string LeakageCsvRow(const LeakageReport& r) {
  return std::to_string(r.n) + "," + std::to_string(r.m) + "," + std::to_string(r.q) + "," +
         FormatNumber(r.adversary_rate) + "," + FormatNumber(r.rate) + "," +
         FormatNumber(r.delta_mi) + "," + FormatNumber(r.delta_max) + "," +
         FormatNumber(r.lower_bound) + "," + FormatNumber(r.upper_bound) + "," +
         std::to_string(r.iterations) + "," + FormatNumber(r.tolerance);
}

}  // namespace scslab

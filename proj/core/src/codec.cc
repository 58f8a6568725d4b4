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

#include "scslab/codec.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace scslab {
namespace {

// Slack for floor(n R / ln q) when nR / ln q is an integer up to round-off.
constexpr double kRateSlack = 1e-9;

}  // namespace

std::size_t UniversalCode::CodeLengthForRate(std::size_t n, double rate,
                                             std::uint32_t q) {
  if (!(rate > 0.0)) throw std::invalid_argument("code rate must be positive");
  const double symbols = static_cast<double>(n) * rate / std::log(static_cast<double>(q));
  if (symbols >= static_cast<double>(n)) return n;
  return static_cast<std::size_t>(std::floor(symbols + kRateSlack));
}

UniversalCode UniversalCode::Build(std::size_t n, double rate, std::uint32_t q) {
  if (n == 0) throw std::invalid_argument("block length must be >= 1");
  PrimeField field(q);
  const std::size_t m = CodeLengthForRate(n, rate, q);
  if (m == 0) {
    throw std::invalid_argument("rate " + std::to_string(rate) +
                                " gives code length m = 0 at n = " +
                                std::to_string(n));
  }
  const std::uint64_t space = IntPow(q, n);
  if (space > kEnumerationCap) {
    throw std::length_error("q^n = " + std::to_string(space) +
                            " exceeds the enumeration cap");
  }
  const std::uint64_t codewords = IntPow(q, m);

  UniversalCode code(n, m, rate, field);

  // Type ordering.
  std::vector<TypeClass> types = EnumerateTypes(n, q);
  std::stable_sort(types.begin(), types.end(),
                   [](const TypeClass& a, const TypeClass& b) {
                     const double ha = a.EmpiricalEntropy();
                     const double hb = b.EmpiricalEntropy();
                     if (ha != hb) return ha < hb;
                     return a.counts < b.counts;
                   });
  std::map<std::vector<std::uint32_t>, std::size_t> slot_of_type;
  std::vector<std::uint64_t> next_rank(types.size());
  std::uint64_t offset = 0;
  for (std::size_t t = 0; t < types.size(); ++t) {
    slot_of_type.emplace(types[t].counts, t);
    next_rank[t] = offset;
    offset += types[t].size;
  }

  // Scanning x in numeric order keeps each type's members lexicographic.
  code.rank_of_.resize(space);
  code.order_.resize(space);
  std::vector<std::uint32_t> counts(q, 0);
  FieldVec x(n, 0);
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Residue s : x) ++counts[s];
    const std::size_t t = slot_of_type.at(counts);
    const std::uint64_t r = next_rank[t]++;
    code.rank_of_[idx] = static_cast<std::uint32_t>(r);
    code.order_[r] = static_cast<std::uint32_t>(idx);
    // Increment x as a base-q counter, last symbol least significant.
    for (std::size_t i = n; i-- > 0;) {
      if (++x[i] < q) break;
      x[i] = 0;
    }
  }

  code.decoder_.assign(code.order_.begin(), code.order_.begin() + codewords);
  code.type_order_.reserve(types.size());
  for (auto& t : types) code.type_order_.push_back({std::move(t), 0});
  code.RecountTypeMembership();
  return code;
}

void UniversalCode::RecountTypeMembership() {
  std::map<std::vector<std::uint32_t>, std::size_t> slot;
  for (std::size_t t = 0; t < type_order_.size(); ++t) {
    slot.emplace(type_order_[t].type.counts, t);
    type_order_[t].members_in_decoding_set = 0;
  }
  const std::uint32_t q = field_.order();
  for (std::uint64_t x = 0; x < order_.size(); ++x) {
    if (!InDecodingSet(x)) continue;
    const TypeClass type = TypeOf(IndexToSequence(x, n_, q), q);
    ++type_order_[slot.at(type.counts)].members_in_decoding_set;
  }
}

double UniversalCode::realized_rate() const {
  return static_cast<double>(m_) / static_cast<double>(n_) *
         std::log(static_cast<double>(field_.order()));
}

bool UniversalCode::RateWindowSatisfied() const {
  const double r = realized_rate();
  return r <= rate_ + kRateSlack && r >= rate_ - 1.0 / static_cast<double>(n_) - kRateSlack;
}

std::uint64_t UniversalCode::EncodeIndex(std::uint64_t x) const {
  if (x >= order_.size()) throw std::out_of_range("source index >= q^n");
  const std::uint64_t r = rank_of_[x];
  const std::uint64_t last = decoder_.size() - 1;
  return r < decoder_.size() ? r : last;
}

std::uint64_t UniversalCode::DecodeIndex(std::uint64_t y) const {
  if (y >= decoder_.size()) throw std::out_of_range("codeword index >= q^m");
  return decoder_[y];
}

FieldVec UniversalCode::Encode(std::span<const Residue> x) const {
  if (x.size() != n_) throw std::invalid_argument("encode: length != n");
  return IndexToSequence(EncodeIndex(SequenceToIndex(x, field_.order())), m_,
                         field_.order());
}

FieldVec UniversalCode::Decode(std::span<const Residue> y) const {
  if (y.size() != m_) throw std::invalid_argument("decode: length != m");
  return IndexToSequence(DecodeIndex(SequenceToIndex(y, field_.order())), n_,
                         field_.order());
}

UniversalCode UniversalCode::WithDecoderFault(std::uint64_t codeword,
                                              std::uint64_t sequence) const {
  if (codeword >= decoder_.size()) throw std::out_of_range("fault: codeword index");
  if (sequence >= order_.size()) throw std::out_of_range("fault: sequence index");
  UniversalCode faulty = *this;
  faulty.decoder_[codeword] = static_cast<std::uint32_t>(sequence);
  faulty.RecountTypeMembership();
  return faulty;
}

double ErrorProbabilityExact(const UniversalCode& code, const Pmf& source) {
  if (source.size() != code.alphabet_size()) {
    throw std::invalid_argument("source alphabet != code alphabet");
  }
  double pe = 0.0;
  for (const TypeOrderEntry& entry : code.type_order()) {
    const std::uint64_t outside = entry.type.size - entry.members_in_decoding_set;
    if (outside == 0) continue;
    const double lp = entry.type.LogSequenceProbability(source);
    if (std::isinf(lp)) continue;
    pe += static_cast<double>(outside) * std::exp(lp);
  }
  return std::min(pe, 1.0);
}

double ErrorExponent(double rate, double gamma, const Pmf& source) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (rate < 0.0) throw std::invalid_argument("rate must be non-negative");
  const double target = rate - gamma;
  if (target <= Entropy(source)) return 0.0;

  std::vector<double> support;
  for (double p : source.probs()) {
    if (p > 0.0) support.push_back(p);
  }
  const double max_entropy = std::log(static_cast<double>(support.size()));
  if (target > max_entropy) return std::numeric_limits<double>::infinity();

  auto tilted = [&](double s) {
    std::vector<double> t(support.size());
    double z = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      t[i] = std::pow(support[i], s);
      z += t[i];
    }
    for (double& v : t) v /= z;
    return t;
  };
  // H(tilted(s)) falls monotonically from ln|supp| at s = 0 to H(p) at s = 1.
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (Entropy(tilted(mid)) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return KlDivergence(tilted(lo), support);
}

UniversalBoundReport VerifyUniversalCodeBound(const UniversalCode& code,
                                            const Pmf& source, double gamma) {
  UniversalBoundReport r;
  r.n = code.block_length();
  r.m = code.code_length();
  r.rate = code.rate();
  r.gamma = gamma;
  r.error_probability = ErrorProbabilityExact(code, source);
  r.exponent = ErrorExponent(code.rate(), gamma, source);
  const double n = static_cast<double>(r.n);
  const double alphabet = static_cast<double>(code.alphabet_size());
  r.bound = std::isinf(r.exponent)
                ? 0.0
                : std::exp(alphabet * std::log(n + 1.0) - n * r.exponent);
  r.delta_n = (alphabet * std::log(n + 1.0) + 1.0) / n;
  r.precondition_met = r.delta_n <= gamma;
  r.holds = r.error_probability <= r.bound * (1.0 + 1e-12);
  return r;
}

}  // namespace scslab

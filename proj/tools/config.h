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

#ifndef SCSLAB_TOOLS_CONFIG_H_
#define SCSLAB_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scslab/analysis.h"
#include "scslab/capacity.h"
#include "scslab/crypto.h"
#include "scslab/probability.h"

namespace scslab::tools {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecoderFault {
  std::uint64_t codeword = 0;
  std::uint64_t sequence = 0;
};

struct ExperimentConfig {
  nlohmann::json raw;  // effective document, after command-line overrides

  Pmf source = Pmf::Uniform(2);
  Pmf key = Pmf::Uniform(2);
  ChannelMatrix side_channel = ChannelMatrix::Identity(2);
  std::vector<std::size_t> block_lengths;
  double rate = 0.0;
  double adversary_rate = 0.0;
  double gamma = 0.05;
  nlohmann::json adversary;
  std::string keymap = "random";  // random | projection | zero
  std::size_t keymap_draws = 1;
  ValidationLevel validation = ValidationLevel::kAuto;
  std::uint64_t seed = 0;
  CapacityOptions solver;
  std::uint64_t mc_trials = 0;
  bool simulate_exponent = true;
  std::size_t mu_points = 21;
  std::vector<double> ra_grid;
  std::vector<double> r_grid;
  ExponentGrid grid;
  SimplexSearchOptions search;
  double tau = 0.1;
  double band = 1e-6;
  std::optional<DecoderFault> decoder_fault;

  std::uint32_t alphabet() const { return static_cast<std::uint32_t>(source.size()); }
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

// Throws ConfigError on any invalid or missing field.
ExperimentConfig ParseConfig(nlohmann::json doc, const Overrides& overrides = {});
ExperimentConfig LoadConfig(const std::string& path, const Overrides& overrides = {});

// FNV-1a 64 of the canonical dump of the effective document.
std::string ConfigHash(const nlohmann::json& doc);

}  // namespace scslab::tools

#endif  // SCSLAB_TOOLS_CONFIG_H_

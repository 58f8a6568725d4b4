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

#include "config.h"

#include <cstdio>
#include <fstream>

#include "scslab/galois.h"
#include "scslab/serialization.h"

namespace scslab::tools {

using nlohmann::json;

namespace {

template <typename T>
T Get(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

const json& Require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ConfigError(std::string("missing field: ") + key);
  return doc.at(key);
}

ValidationLevel ParseValidation(const std::string& s) {
  if (s == "auto") return ValidationLevel::kAuto;
  if (s == "exhaustive") return ValidationLevel::kExhaustive;
  if (s == "sampled") return ValidationLevel::kSampled;
  if (s == "none") return ValidationLevel::kNone;
  throw ConfigError("unknown validation level: " + s);
}

}  // namespace

ExperimentConfig ParseConfig(json doc, const Overrides& overrides) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (overrides.seed) doc["seeds"]["root"] = *overrides.seed;
  if (overrides.tolerance) doc["solver"]["tolerance"] = *overrides.tolerance;

  ExperimentConfig c;
  try {
    c.source = PmfFromJson(Require(doc, "source"));
    c.key = doc.contains("key") ? PmfFromJson(doc.at("key")) : Pmf::Uniform(c.source.size());
    c.side_channel = doc.contains("W") ? ChannelFromJson(doc.at("W"))
                                       : ChannelMatrix::Identity(c.key.size());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!IsPrime(c.source.size())) throw ConfigError("source alphabet size must be prime");
  if (c.key.size() != c.source.size()) throw ConfigError("key and source alphabets differ");
  if (c.side_channel.inputs() != c.key.size()) {
    throw ConfigError("W must have one row per key letter");
  }

  c.block_lengths = Get<std::vector<std::size_t>>(doc, "n", {});
  if (c.block_lengths.empty()) throw ConfigError("n must be a non-empty list");
  for (std::size_t n : c.block_lengths) {
    if (n == 0) throw ConfigError("block lengths must be positive");
  }
  c.rate = Get<double>(doc, "rate", 0.0);
  c.adversary_rate = Get<double>(doc, "adversary_rate", 0.0);
  c.gamma = Get<double>(doc, "gamma", 0.05);
  if (c.rate < 0.0 || c.adversary_rate < 0.0 || c.gamma <= 0.0) {
    throw ConfigError("rates must be non-negative and gamma positive");
  }
  c.adversary = doc.value("adversary", json{{"kind", "constant"}});

  const json& seeds = Require(doc, "seeds");
  if (!seeds.contains("root")) throw ConfigError("missing field: seeds.root");
  c.seed = Get<std::uint64_t>(seeds, "root", 0);

  const json keymap = doc.value("keymap", json::object());
  c.keymap = Get<std::string>(keymap, "kind", "random");
  c.keymap_draws = Get<std::size_t>(keymap, "draws", 1);
  if (c.keymap != "random" && c.keymap != "projection" && c.keymap != "zero") {
    throw ConfigError("unknown keymap kind: " + c.keymap);
  }
  if (c.keymap_draws == 0) throw ConfigError("keymap.draws must be positive");
  c.validation = ParseValidation(Get<std::string>(doc, "validation", "auto"));

  const json solver = doc.value("solver", json::object());
  c.solver.tolerance = Get<double>(solver, "tolerance", c.solver.tolerance);
  c.solver.max_iterations = Get<std::uint64_t>(solver, "max_iterations", c.solver.max_iterations);
  c.search.starts = Get<std::size_t>(solver, "starts", c.search.starts);
  c.search.max_iterations = Get<std::size_t>(solver, "descent_iterations", c.search.max_iterations);
  if (!(c.solver.tolerance > 0.0)) throw ConfigError("solver.tolerance must be positive");

  const json mc = doc.value("monte_carlo", json::object());
  c.mc_trials = Get<std::uint64_t>(mc, "trials", 0);

  const json region = doc.value("region", json::object());
  c.mu_points = Get<std::size_t>(region, "mu_points", c.mu_points);
  c.band = Get<double>(region, "band", c.band);
  if (c.mu_points < 2) throw ConfigError("region.mu_points must be at least 2");

  const json exponent = doc.value("exponent", json::object());
  c.simulate_exponent = Get<bool>(exponent, "in_simulate", true);
  c.ra_grid = Get<std::vector<double>>(exponent, "RA", {c.adversary_rate});
  c.r_grid = Get<std::vector<double>>(exponent, "R", {c.rate});
  c.tau = Get<double>(exponent, "tau", c.tau);
  c.grid.mu_points = Get<std::size_t>(exponent, "mu_points", c.grid.mu_points);
  c.grid.alpha_points = Get<std::size_t>(exponent, "alpha_points", c.grid.alpha_points);
  c.grid.lambda_points = Get<std::size_t>(exponent, "lambda_points", c.grid.lambda_points);
  c.grid.lambda_max = Get<double>(exponent, "lambda_max", c.grid.lambda_max);
  c.grid.small_lambda_levels =
      Get<std::size_t>(exponent, "small_lambda_levels", c.grid.small_lambda_levels);
  c.grid.refinement_rounds =
      Get<std::size_t>(exponent, "refinement_rounds", c.grid.refinement_rounds);
  if (c.grid.mu_points < 2 || c.grid.alpha_points < 2 || c.grid.lambda_points < 2) {
    throw ConfigError("exponent grids need at least two points");
  }
  for (double v : c.ra_grid) {
    if (v < 0.0) throw ConfigError("exponent.RA must be non-negative");
  }
  for (double v : c.r_grid) {
    if (v < 0.0) throw ConfigError("exponent.R must be non-negative");
  }

  if (doc.contains("fault") && doc.at("fault").contains("decoder_override")) {
    const json& f = doc.at("fault").at("decoder_override");
    c.decoder_fault = DecoderFault{Get<std::uint64_t>(f, "codeword", 0),
                                   Get<std::uint64_t>(f, "sequence", 0)};
  }
  c.raw = std::move(doc);
  return c;
}

ExperimentConfig LoadConfig(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return ParseConfig(std::move(doc), overrides);
}

std::string ConfigHash(const json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace scslab::tools

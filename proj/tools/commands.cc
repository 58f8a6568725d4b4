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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "scslab/analysis.h"
#include "scslab/codec.h"
#include "scslab/format.h"
#include "scslab/leakage.h"
#include "scslab/probability.h"
#include "scslab/rng.h"
#include "scslab/serialization.h"

#ifndef SCSLAB_VERSION
#define SCSLAB_VERSION "unknown"
#endif

namespace scslab::tools {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  void Write(const std::string& name, const std::string& contents) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << contents;
    files_.push_back(name);
  }

  void WriteManifest(std::string_view command, const ExperimentConfig& config) {
    json manifest{{"tool", "scslab"},
                  {"version", SCSLAB_VERSION},
                  {"command", std::string(command)},
                  {"config_hash", "fnv1a64:" + ConfigHash(config.raw)},
                  {"seeds", config.raw.at("seeds")},
                  {"outputs", files_}};
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string Join(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ',';
    s += fields[i];
  }
  return s;
}

SideChannel Channel(const ExperimentConfig& config) { return SideChannel(config.side_channel); }

AnalysisOptions Options(const ExperimentConfig& config, bool cardinality_check) {
  AnalysisOptions o;
  o.search = config.search;
  o.cardinality_check = cardinality_check;
  return o;
}

std::optional<UniversalCode> MakeCode(const ExperimentConfig& config, std::size_t n,
                                      std::ostream& log) {
  if (UniversalCode::CodeLengthForRate(n, config.rate, config.alphabet()) == 0) {
    log << "n=" << n << ": m = 0 at this rate, skipped\n";
    return std::nullopt;
  }
  UniversalCode code = UniversalCode::Build(n, config.rate, config.alphabet());
  if (config.decoder_fault) {
    code = code.WithDecoderFault(config.decoder_fault->codeword, config.decoder_fault->sequence);
  }
  return code;
}

int Verify(const ExperimentConfig& config, OutputDir& out, std::ostream& log) {
  const SideChannel sc = Channel(config);
  json runs = json::array();
  bool ok = true;
  for (std::size_t n : config.block_lengths) {
    if (UniversalCode::CodeLengthForRate(n, config.rate, config.alphabet()) == 0) {
      log << "n=" << n << ": m = 0 at this rate, skipped\n";
      continue;
    }
    const Cryptosystem sys = MakeSystem(config, n, ValidationLevel::kNone);
    const StructuralReport report =
        CheckStructuralProperties(sys, config.validation, DeriveSeed(config.seed, "verify", n));
    json run{{"n", n}, {"m", sys.code_length()}, {"structural", ToJson(report)}};
    for (const PropertyFailure& f : report.failures) {
      log << "n=" << n << " FAIL " << f.property << " key=" << f.witness.key
          << " x=" << f.witness.x << " y=" << f.witness.y << ": " << f.detail << '\n';
    }
    ok = ok && report.passed();
    try {
      const GammaKernel kernel = GammaKernel::Build(sys, MakeAdversary(config, n), sc, config.key);
      const KernelCheckReport k = CheckKernelStructure(kernel, sys.code());
      json failures = json::array();
      for (const KernelCheckFailure& f : k.failures) {
        failures.push_back(json{{"property", f.property}, {"c", f.c}, {"a", f.a}, {"value", f.value}});
        log << "n=" << n << " FAIL kernel " << f.property << " c=" << f.c << " a=" << f.a
            << " value=" << FormatNumber(f.value) << '\n';
      }
      run["kernel"] = json{{"max_row_sum_error", k.max_row_sum_error},
                           {"max_uniformity_error", k.max_uniformity_error},
                           {"passed", k.passed()},
                           {"failures", failures}};
      ok = ok && k.passed();
    } catch (const std::length_error&) {
      log << "n=" << n << ": kernel exceeds the table cap, kernel checks skipped\n";
    }
    log << "n=" << n << " m=" << sys.code_length() << (report.passed() ? " structural PASS" : " structural FAIL")
        << '\n';
    runs.push_back(std::move(run));
  }
  out.Write("verify.json", json{{"passed", ok}, {"runs", runs}}.dump(2) + "\n");
  log << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? kExitOk : kExitViolation;
}

double MonteCarloErrorRate(const ExperimentConfig& config, const Cryptosystem& sys,
                           std::size_t n) {
  Rng rng(DeriveSeed(config.seed, "monte_carlo", n));
  std::uint64_t errors = 0;
  FieldVec x(n), k(n);
  for (std::uint64_t t = 0; t < config.mc_trials; ++t) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Residue>(SampleLetter(config.source, rng));
    for (std::size_t i = 0; i < n; ++i) k[i] = static_cast<Residue>(SampleLetter(config.key, rng));
    if (sys.Decrypt(k, sys.Encrypt(k, x)) != x) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(config.mc_trials);
}

int Simulate(const ExperimentConfig& config, const RunOptions& options, OutputDir& out,
             std::ostream& log) {
  const SideChannel sc = Channel(config);
  double f = kNan;
  if (config.simulate_exponent) {
    ExponentEvaluator ev(KeySideJoint(config.key, config.side_channel), config.grid,
                         Options(config, false), options.jobs);
    f = ev.F(config.adversary_rate, config.rate).value;
  }
  std::ostringstream csv;
  csv << "n,m,q,RA,R,pe_exact,pe_bound,E_gamma,delta_mi,delta_max,lb,ub,F,secrecy_bound,"
         "mc_trials,mc_pe\n";
  for (std::size_t n : config.block_lengths) {
    const std::optional<UniversalCode> code = MakeCode(config, n, log);
    if (!code) continue;
    const Cryptosystem sys = MakeSystem(config, n, config.validation);
    const UniversalBoundReport bound = VerifyUniversalCodeBound(sys.code(), config.source, config.gamma);
    double delta_mi = kNan, delta_max = kNan, lb = kNan, ub = kNan;
    try {
      const LeakageReport r =
          ComputeLeakage(sys, MakeAdversary(config, n), sc, config.key, config.source, config.solver);
      delta_mi = r.delta_mi;
      delta_max = r.delta_max;
      lb = r.lower_bound;
      ub = r.upper_bound;
    } catch (const std::length_error&) {
      log << "n=" << n << ": kernel exceeds the table cap, leakage columns left empty\n";
    }
    const double nd = static_cast<double>(n);
    const double secrecy = 5.0 * nd * config.rate * std::exp(-nd * f);
    const double mc = config.mc_trials ? MonteCarloErrorRate(config, sys, n) : kNan;
    csv << Join({std::to_string(n), std::to_string(sys.code_length()),
                 std::to_string(config.alphabet()), FormatNumber(config.adversary_rate),
                 FormatNumber(config.rate), FormatNumber(bound.error_probability),
                 FormatNumber(bound.bound), FormatNumber(bound.exponent), FormatNumber(delta_mi),
                 FormatNumber(delta_max), FormatNumber(lb), FormatNumber(ub), FormatNumber(f),
                 FormatNumber(secrecy), std::to_string(config.mc_trials), FormatNumber(mc)})
        << '\n';
    log << "n=" << n << " m=" << sys.code_length() << " pe=" << FormatNumber(bound.error_probability)
        << " delta_max=" << FormatNumber(delta_max) << '\n';
  }
  out.Write("simulate.csv", csv.str());
  return kExitOk;
}

int Leakage(const ExperimentConfig& config, OutputDir& out, std::ostream& log) {
  const SideChannel sc = Channel(config);
  std::ostringstream csv;
  csv << LeakageCsvHeader() << '\n';
  for (std::size_t n : config.block_lengths) {
    if (!MakeCode(config, n, log)) continue;
    const Cryptosystem sys = MakeSystem(config, n, config.validation);
    const LeakageReport r =
        ComputeLeakage(sys, MakeAdversary(config, n), sc, config.key, config.source, config.solver);
    csv << LeakageCsvRow(r) << '\n';
    log << "n=" << n << " delta_max=" << FormatNumber(r.delta_max) << " in ["
        << FormatNumber(r.lower_bound) << ", " << FormatNumber(r.upper_bound) << "]\n";
  }
  out.Write("leakage.csv", csv.str());
  return kExitOk;
}

int Region(const ExperimentConfig& config, const RunOptions& options, OutputDir& out,
           std::ostream& log) {
  const KeySideJoint pkz(config.key, config.side_channel);
  const std::vector<double> mus = LinearGrid(0.0, 1.0, config.mu_points);
  const AkwRegion region = AkwRegion::Compute(pkz, mus, Options(config, true), options.jobs);
  std::ostringstream csv, dat;
  csv << "mu,R_mu\n";
  dat << "# mu RA R R_mu R_mu_extra_aux\n";
  for (const RMuResult& p : region.hyperplanes()) {
    csv << FormatNumber(p.mu) << ',' << FormatNumber(p.value) << '\n';
    dat << FormatNumber(p.mu) << ' ' << FormatNumber(p.info.i_zu) << ' '
        << FormatNumber(p.info.h_k_given_u) << ' ' << FormatNumber(p.value) << ' '
        << FormatNumber(p.value_extra_aux) << '\n';
    if (p.cardinality_sensitive) {
      log << "mu=" << FormatNumber(p.mu) << ": |U| = |Z| + 1 changes R_mu to "
          << FormatNumber(p.value_extra_aux) << '\n';
    }
  }
  out.Write("region.csv", csv.str());
  out.Write("region_points.dat", dat.str());
  out.Write("region.gp",
            "set xlabel \"R_A (nats)\"\n"
            "set ylabel \"R (nats)\"\n"
            "set key top right\n"
            "plot \"region_points.dat\" using 2:3 with linespoints title \"supporting points\", \\\n"
            "     " + FormatNumber(pkz.KeyEntropy()) + " - x title \"R_A + R = H(K)\"\n");
  log << "H(K)=" << FormatNumber(pkz.KeyEntropy())
      << " H(K|Z)=" << FormatNumber(pkz.KeyEntropyGivenObservation()) << '\n';
  return kExitOk;
}

int Exponent(const ExperimentConfig& config, const RunOptions& options, OutputDir& out,
             std::ostream& log) {
  const KeySideJoint pkz(config.key, config.side_channel);
  const AkwRegion region = AkwRegion::Compute(pkz, LinearGrid(0.0, 1.0, config.mu_points),
                                              Options(config, false), options.jobs);
  ExponentEvaluator ev(pkz, config.grid, Options(config, false), options.jobs);
  std::vector<double> ras = config.ra_grid, rs = config.r_grid;
  std::sort(ras.begin(), ras.end());
  std::sort(rs.begin(), rs.end());
  struct Row {
    double ra, r, f, f_lower;
  };
  std::vector<Row> rows;
  for (double ra : ras) {
    for (double r : rs) rows.push_back({ra, r, 0.0, 0.0});
  }
  ParallelFor(rows.size(), options.jobs, [&](std::size_t i) {
    rows[i].f = ev.F(rows[i].ra, rows[i].r).value;
    rows[i].f_lower = ev.FLower(rows[i].ra, rows[i].r).value;
  });
  std::ostringstream csv, dat;
  csv << "RA,R,F,F_lower,member\n";
  dat << "# RA R F F_lower\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    csv << Join({FormatNumber(row.ra), FormatNumber(row.r), FormatNumber(row.f),
                 FormatNumber(row.f_lower),
                 MembershipName(region.Classify(row.ra, row.r, config.band))})
        << '\n';
    if (i > 0 && rows[i - 1].ra != row.ra) dat << '\n';
    dat << FormatNumber(row.ra) << ' ' << FormatNumber(row.r) << ' ' << FormatNumber(row.f)
        << ' ' << FormatNumber(row.f_lower) << '\n';
  }
  out.Write("exponent.csv", csv.str());
  out.Write("exponent.dat", dat.str());
  out.Write("exponent.gp",
            "set xlabel \"R_A (nats)\"\n"
            "set ylabel \"R (nats)\"\n"
            "set zlabel \"exponent\"\n"
            "splot \"exponent.dat\" using 1:2:3 with lines title \"F\", \\\n"
            "      \"exponent.dat\" using 1:2:4 with lines title \"F lower\"\n");
  log << "exponent: " << rows.size() << " rate points\n";
  return kExitOk;
}

int BuildCode(const ExperimentConfig& config, OutputDir& out, std::ostream& log) {
  json systems = json::array();
  for (std::size_t n : config.block_lengths) {
    if (!MakeCode(config, n, log)) continue;
    const Cryptosystem sys = MakeSystem(config, n, config.validation);
    systems.push_back(json{{"code", ToJson(sys.code())},
                           {"keymap", ToJson(sys.keymap())},
                           {"kernel_seed", DeriveSeed(config.seed, "keymap", n)}});
    log << "n=" << n << " m=" << sys.code_length() << " types=" << sys.code().type_order().size()
        << '\n';
  }
  out.Write("codes.json", json{{"systems", systems}}.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names{"verify", "simulate", "leakage",
                                              "region", "exponent", "build-code"};
  return names;
}

AdversaryEncoder MakeAdversary(const ExperimentConfig& config, std::size_t n) {
  const SideChannel sc = Channel(config);
  if (config.adversary.value("kind", "") == "best") {
    return BestScalarQuantizer(sc, config.key, config.adversary_rate, n).encoder;
  }
  AdversaryEncoder a = [&] {
    try {
      return AdversaryFromJson(config.adversary, sc.observation_alphabet(), n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  if (!a.SatisfiesRate(config.adversary_rate)) {
    throw ConfigError("adversary rate " + FormatNumber(a.rate()) + " exceeds adversary_rate");
  }
  return a;
}

Cryptosystem MakeSystem(const ExperimentConfig& config, std::size_t n, ValidationLevel level) {
  std::optional<UniversalCode> code;
  {
    std::ostringstream ignored;
    code = MakeCode(config, n, ignored);
  }
  if (!code) throw ConfigError("m = 0 for n = " + std::to_string(n));
  const std::size_t m = code->code_length();
  const PrimeField field(config.alphabet());
  const std::uint64_t seed = DeriveSeed(config.seed, "keymap", n);
  if (config.keymap == "projection") {
    return Cryptosystem(*code, AffineMap::Projection(field, n, m), level, seed);
  }
  if (config.keymap == "zero") {
    return Cryptosystem(*code, AffineMap::Zero(field, n, m), level, seed);
  }
  if (config.keymap_draws == 1) {
    return Cryptosystem(*code, AffineMap::Random(n, m, field, seed), level, seed);
  }
  const SideChannel sc = Channel(config);
  const AdversaryEncoder adversary = MakeAdversary(config, n);
  std::optional<AffineMap> best;
  double best_ub = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < config.keymap_draws; ++d) {
    AffineMap map = AffineMap::Random(n, m, field, DeriveSeed(seed, "draw", d));
    const Cryptosystem trial(*code, map, ValidationLevel::kNone);
    const double ub = DeltaMaxUpperBound(GammaKernel::Build(trial, adversary, sc, config.key));
    if (ub < best_ub - 1e-12) {
      best_ub = ub;
      best = std::move(map);
    }
  }
  return Cryptosystem(*code, *best, level, seed);
}

int RunCommand(std::string_view name, const ExperimentConfig& config, const RunOptions& options,
               std::ostream& log) {
  try {
    OutputDir out(options.out_dir);
    int status = kExitConfigError;
    if (name == "verify") {
      status = Verify(config, out, log);
    } else if (name == "simulate") {
      status = Simulate(config, options, out, log);
    } else if (name == "leakage") {
      status = Leakage(config, out, log);
    } else if (name == "region") {
      status = Region(config, options, out, log);
    } else if (name == "exponent") {
      status = Exponent(config, options, out, log);
    } else if (name == "build-code") {
      status = BuildCode(config, out, log);
    } else {
      log << "unknown command: " << name << '\n';
      return kExitConfigError;
    }
    out.WriteManifest(name, config);
    return status;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::logic_error& e) {
    log << "property violation: " << e.what() << '\n';
    return kExitViolation;
  }
}

}  // namespace scslab::tools

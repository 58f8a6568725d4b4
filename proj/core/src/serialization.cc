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

#include "scslab/serialization.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "scslab/format.h"

namespace scslab {

using nlohmann::json;

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<double> NumberArray(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& e : j) {
    if (!e.is_number()) throw std::invalid_argument(std::string(what) + " entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

Pmf PmfFromJson(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("distribution must be an object");
  if (j.contains("bernoulli")) return Pmf::Bernoulli(j.at("bernoulli").get<double>());
  if (j.contains("uniform")) return Pmf::Uniform(j.at("uniform").get<std::size_t>());
  if (!j.contains("probs")) throw std::invalid_argument("distribution needs probs");
  std::vector<double> probs = NumberArray(j.at("probs"), "probs");
  if (j.contains("alphabet") && j.at("alphabet").get<std::size_t>() != probs.size()) {
    throw std::invalid_argument("alphabet does not match probs length");
  }
  return Pmf(std::move(probs));
}

json ToJson(const Pmf& p) {
  return json{{"alphabet", p.size()}, {"probs", std::vector<double>(p.probs().begin(), p.probs().end())}};
}

ChannelMatrix ChannelFromJson(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("channel must be an object");
  if (j.contains("bsc")) return ChannelMatrix::BinarySymmetric(j.at("bsc").get<double>());
  if (j.contains("identity")) return ChannelMatrix::Identity(j.at("identity").get<std::size_t>());
  if (!j.contains("rows") || !j.at("rows").is_array()) {
    throw std::invalid_argument("channel needs rows");
  }
  std::vector<std::vector<double>> rows;
  for (const json& r : j.at("rows")) rows.push_back(NumberArray(r, "channel row"));
  return ChannelMatrix(std::move(rows));
}

json ToJson(const ChannelMatrix& w) {
  json rows = json::array();
  for (std::size_t i = 0; i < w.inputs(); ++i) {
    const auto r = w.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return json{{"rows", rows}};
}

AdversaryEncoder AdversaryFromJson(const json& j, std::size_t observation_alphabet,
                                   std::size_t n) {
  if (!j.is_object()) throw std::invalid_argument("adversary must be an object");
  const std::string kind = j.value("kind", "scalar");
  if (kind == "constant") return AdversaryEncoder::Constant(observation_alphabet, n);
  if (kind == "identity") return AdversaryEncoder::Identity(observation_alphabet, n);
  if (kind != "scalar") throw std::invalid_argument("unknown adversary kind: " + kind);
  if (!j.contains("cells")) throw std::invalid_argument("scalar adversary needs cells");
  std::vector<std::vector<std::uint32_t>> cells;
  for (const json& c : j.at("cells")) cells.push_back(c.get<std::vector<std::uint32_t>>());
  return AdversaryEncoder::FromCells(cells, observation_alphabet, n);
}

json ToJson(const AdversaryEncoder& a) {
  json j{{"block_length", a.block_length()},
         {"observation_alphabet", a.observation_alphabet()},
         {"messages", a.message_count()},
         {"rate", a.rate()}};
  if (a.kind() == AdversaryEncoder::Kind::kScalar) {
    std::vector<std::vector<std::uint32_t>> cells(a.cells());
    for (std::size_t z = 0; z < a.cell_of_z().size(); ++z) {
      cells[a.cell_of_z()[z]].push_back(static_cast<std::uint32_t>(z));
    }
    j["kind"] = "scalar";
    j["cells"] = cells;
  } else {
    j["kind"] = "table";
  }
  return j;
}

json ToJson(const AffineMap& map) {
  return json{{"q", map.field().order()},
              {"n", map.input_length()},
              {"m", map.output_length()},
              {"matrix", map.matrix()},
              {"offset", map.offset()},
              {"rank", map.Rank()}};
}

json ToJson(const UniversalCode& code) {
  json order = json::array();
  for (const TypeOrderEntry& e : code.type_order()) {
    order.push_back(json{{"counts", e.type.counts},
                         {"size", e.type.size},
                         {"entropy", e.type.EmpiricalEntropy()},
                         {"in_decoding_set", e.members_in_decoding_set}});
  }
  return json{{"n", code.block_length()},
              {"m", code.code_length()},
              {"q", code.alphabet_size()},
              {"rate", code.rate()},
              {"realized_rate", code.realized_rate()},
              {"type_order", order}};
}

json ToJson(const StructuralReport& report) {
  json failures = json::array();
  for (const PropertyFailure& f : report.failures) {
    failures.push_back(json{{"property", f.property}, {"witness", json{{"key", f.witness.key}, {"x", f.witness.x}, {"y", f.witness.y}}}, {"detail", f.detail}});
  }
  return json{{"exhaustive", report.exhaustive},
              {"keys_checked", report.keys_checked},
              {"decoding_set_size", report.decoding_set_size},
              {"passed", report.passed()},
              {"failures", failures}};
}

}  // namespace scslab

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

#ifndef SCSLAB_SERIALIZATION_H_
#define SCSLAB_SERIALIZATION_H_

#include <cstddef>

#include <nlohmann/json.hpp>

#include "scslab/adversary.h"
#include "scslab/codec.h"
#include "scslab/crypto.h"
#include "scslab/galois.h"
#include "scslab/probability.h"

// JSON readers and writers for distributions, channels, adversaries and
// constructed systems. Readers throw std::invalid_argument on malformed input.
namespace scslab {

// {"probs": [...]}, {"bernoulli": p} or {"uniform": size}. An optional
// "alphabet" field must match the number of probabilities.
Pmf PmfFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const Pmf& p);

// {"rows": [[...], ...]}, {"bsc": p} or {"identity": size}.
ChannelMatrix ChannelFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const ChannelMatrix& w);

// {"kind": "scalar", "cells": [[z, ...], ...]}, {"kind": "constant"} or
// {"kind": "identity"}.
AdversaryEncoder AdversaryFromJson(const nlohmann::json& j, std::size_t observation_alphabet,
                                   std::size_t n);
nlohmann::json ToJson(const AdversaryEncoder& a);

nlohmann::json ToJson(const AffineMap& map);
// Block lengths, alphabet and the type order with decoding-set memberships.
nlohmann::json ToJson(const UniversalCode& code);
nlohmann::json ToJson(const StructuralReport& report);

}  // namespace scslab

#endif  // SCSLAB_SERIALIZATION_H_

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

#include "scslab/crypto.h"

#include <stdexcept>
#include <utility>

#include "scslab/rng.h"

namespace scslab {
namespace {

bool UseExhaustive(const Cryptosystem& sys, ValidationLevel level) {
  if (level == ValidationLevel::kExhaustive) return true;
  if (level != ValidationLevel::kAuto) return false;
  const std::uint64_t space = sys.code().source_space_size();
  return space <= Cryptosystem::kExhaustiveCap / space;
}

std::string Describe(const KeyedWitness& w) {
  return "k=" + std::to_string(w.key) + " x=" + std::to_string(w.x) +
         " y=" + std::to_string(w.y);
}

}  // namespace

Cryptosystem::Cryptosystem(UniversalCode code, AffineMap keymap,
                           ValidationLevel level, std::uint64_t validation_seed)
    : code_(std::move(code)), keymap_(std::move(keymap)) {
  if (keymap_.field() != code_.field()) {
    throw std::invalid_argument("keymap field differs from code alphabet");
  }
  if (keymap_.input_length() != code_.block_length() ||
      keymap_.output_length() != code_.code_length()) {
    throw std::invalid_argument("keymap must map X^n to X^m of the code");
  }
  if (level == ValidationLevel::kNone) return;
  if (auto w = FindConditionViolation(*this, level, validation_seed)) {
    throw std::logic_error("decryption condition violated at " + Describe(*w));
  }
}

std::uint64_t Cryptosystem::KeyCodewordIndex(std::uint64_t key) const {
  const FieldVec k = IndexToSequence(key, block_length(), alphabet_size());
  return SequenceToIndex(keymap_.Apply(k), alphabet_size());
}

FieldVec Cryptosystem::Encrypt(std::span<const Residue> key,
                               std::span<const Residue> x) const {
  if (key.size() != block_length() || x.size() != block_length()) {
    throw std::invalid_argument("encrypt: key and source must have length n");
  }
  return field().AddVec(keymap_.Apply(key), code_.Encode(x));
}

FieldVec Cryptosystem::Decrypt(std::span<const Residue> key,
                               std::span<const Residue> c) const {
  if (key.size() != block_length()) throw std::invalid_argument("decrypt: key length != n");
  if (c.size() != code_length()) throw std::invalid_argument("decrypt: ciphertext length != m");
  return code_.Decode(field().SubVec(c, keymap_.Apply(key)));
}

std::uint64_t Cryptosystem::EncryptIndex(std::uint64_t key, std::uint64_t x) const {
  return AddIndices(KeyCodewordIndex(key), code_.EncodeIndex(x), code_length(),
                    alphabet_size());
}

std::uint64_t Cryptosystem::DecryptIndex(std::uint64_t key, std::uint64_t c) const {
  if (c >= code_.codeword_space_size()) throw std::out_of_range("ciphertext index >= q^m");
  return code_.DecodeIndex(
      SubIndices(c, KeyCodewordIndex(key), code_length(), alphabet_size()));
}

std::optional<KeyedWitness> FindConditionViolation(const Cryptosystem& sys,
                                                   ValidationLevel level,
                                                   std::uint64_t seed) {
  const std::uint64_t space = sys.code().source_space_size();
  const UniversalCode& code = sys.code();
  auto check = [&](std::uint64_t k, std::uint64_t x) -> std::optional<KeyedWitness> {
    const std::uint64_t c = sys.EncryptIndex(k, x);
    const std::uint64_t y = sys.DecryptIndex(k, c);
    if (y != code.DecodeIndex(code.EncodeIndex(x))) return KeyedWitness{k, x, y};
    return std::nullopt;
  };
  if (UseExhaustive(sys, level)) {
    for (std::uint64_t k = 0; k < space; ++k) {
      for (std::uint64_t x = 0; x < space; ++x) {
        if (auto w = check(k, x)) return w;
      }
    }
    return std::nullopt;
  }
  Rng rng(seed);
  for (std::uint64_t i = 0; i < Cryptosystem::kSampledPairs; ++i) {
    const std::uint64_t k = rng.UniformBelow(space);
    const std::uint64_t x = rng.UniformBelow(space);
    if (auto w = check(k, x)) return w;
  }
  return std::nullopt;
}

StructuralReport CheckStructuralProperties(const Cryptosystem& sys,
                                           ValidationLevel level,
                                           std::uint64_t seed,
                                           std::uint64_t sampled_keys) {
  StructuralReport report;
  const UniversalCode& code = sys.code();
  const std::uint64_t space = code.source_space_size();
  const std::uint64_t codewords = code.codeword_space_size();

  std::vector<char> in_d(space, 0);
  for (std::uint64_t x = 0; x < space; ++x) {
    if (code.InDecodingSet(x)) {
      in_d[x] = 1;
      ++report.decoding_set_size;
    }
  }
  if (report.decoding_set_size != codewords) {
    // Witness: the first codeword whose decoding does not re-encode to it.
    KeyedWitness w;
    for (std::uint64_t y = 0; y < codewords; ++y) {
      if (code.EncodeIndex(code.DecodeIndex(y)) != y) {
        w = {0, code.DecodeIndex(y), y};
        break;
      }
    }
    report.failures.push_back(
        {"decoding_set_size", w,
         "|D| = " + std::to_string(report.decoding_set_size) +
             " but q^m = " + std::to_string(codewords)});
  }

  std::vector<std::uint64_t> keys;
  report.exhaustive = UseExhaustive(sys, level);
  if (report.exhaustive) {
    keys.resize(space);
    for (std::uint64_t k = 0; k < space; ++k) keys[k] = k;
  } else {
    Rng rng(seed);
    for (std::uint64_t i = 0; i < sampled_keys; ++i) keys.push_back(rng.UniformBelow(space));
  }
  report.keys_checked = keys.size();

  std::vector<std::int64_t> owner_in_d(codewords);
  std::vector<char> reached(codewords);
  auto fail = [&](const char* name, KeyedWitness w, std::string detail) {
    report.failures.push_back({name, w, std::move(detail)});
  };
  for (std::uint64_t k : keys) {
    std::fill(owner_in_d.begin(), owner_in_d.end(), -1);
    std::fill(reached.begin(), reached.end(), 0);
    bool injective_ok = true;
    bool key_set_ok = true;
    bool condition_ok = true;
    for (std::uint64_t x = 0; x < space; ++x) {
      const std::uint64_t c = sys.EncryptIndex(k, x);
      reached[c] = 1;
      if (in_d[x]) {
        if (owner_in_d[c] >= 0 && injective_ok) {
          fail("injectivity", {k, static_cast<std::uint64_t>(owner_in_d[c]), x},
               "two members of D share ciphertext " + std::to_string(c));
          injective_ok = false;
        }
        owner_in_d[c] = static_cast<std::int64_t>(x);
      }
      const std::uint64_t y = sys.DecryptIndex(k, c);
      if (condition_ok && y != code.DecodeIndex(code.EncodeIndex(x))) {
        fail("condition", {k, x, y}, "decrypt(k, encrypt(k, x)) != psi(phi(x))");
        condition_ok = false;
      }
      if (key_set_ok && (y == x) != static_cast<bool>(in_d[x])) {
        fail("key_set", {k, x, y}, "keyed decoding set differs from D");
        key_set_ok = false;
      }
    }
    for (std::uint64_t c = 0; c < codewords; ++c) {
      if (!reached[c]) {
        fail("surjectivity", {k, 0, c},
             "ciphertext " + std::to_string(c) + " unreachable");
        break;
      }
    }
    if (report.failures.size() > 32) break;
  }
  return report;
}

}  // namespace scslab

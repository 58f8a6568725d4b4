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

#ifndef SCSLAB_CRYPTO_H_
#define SCSLAB_CRYPTO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scslab/codec.h"
#include "scslab/galois.h"

namespace scslab {

enum class ValidationLevel {
  kAuto,        // exhaustive when q^{2n} <= kExhaustiveCap, else sampled
  kExhaustive,
  kSampled,
  kNone,
};

// Additive cipher over a universal source code:
//   encrypt(k, x) = keymap(k) + code.Encode(x)
//   decrypt(k, c) = code.Decode(c - keymap(k))
class Cryptosystem {
 public:
  static constexpr std::uint64_t kExhaustiveCap = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kSampledPairs = 100000;

  // Validates that keymap output length matches the code and that
  // decrypt(k, encrypt(k, x)) = code.Decode(code.Encode(x)); throws
  // std::logic_error naming a witness otherwise.
  Cryptosystem(UniversalCode code, AffineMap keymap,
               ValidationLevel level = ValidationLevel::kAuto,
               std::uint64_t validation_seed = 0);

  const UniversalCode& code() const { return code_; }
  const AffineMap& keymap() const { return keymap_; }
  std::size_t block_length() const { return code_.block_length(); }
  std::size_t code_length() const { return code_.code_length(); }
  std::uint32_t alphabet_size() const { return code_.alphabet_size(); }
  const PrimeField& field() const { return code_.field(); }

  FieldVec Encrypt(std::span<const Residue> key, std::span<const Residue> x) const;
  FieldVec Decrypt(std::span<const Residue> key, std::span<const Residue> c) const;

  // Index-level equivalents for enumeration loops.
  std::uint64_t EncryptIndex(std::uint64_t key, std::uint64_t x) const;
  std::uint64_t DecryptIndex(std::uint64_t key, std::uint64_t c) const;
  // keymap applied to key index; result as codeword index.
  std::uint64_t KeyCodewordIndex(std::uint64_t key) const;

 private:
  UniversalCode code_;
  AffineMap keymap_;
};

// Exhaustive (or sampled) check that decrypt(k, encrypt(k, x)) = psi(phi(x)).
// Returns the first violating (key, x) pair, if any.
struct KeyedWitness {
  std::uint64_t key = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
};
std::optional<KeyedWitness> FindConditionViolation(const Cryptosystem& sys,
                                                   ValidationLevel level,
                                                   std::uint64_t seed);

struct PropertyFailure {
  std::string property;
  KeyedWitness witness;
  std::string detail;
};

struct StructuralReport {
  bool exhaustive = false;
  std::uint64_t keys_checked = 0;
  std::uint64_t decoding_set_size = 0;
  std::vector<PropertyFailure> failures;

  bool passed() const { return failures.empty(); }
};

// Checks, per key k:
//   injectivity   encrypt(k, .) is one-to-one on D
//   surjectivity  encrypt(k, .) maps X^n onto X^m
//   key_set       {x : decrypt(k, encrypt(k, x)) = x} equals D
//   condition     decrypt(k, encrypt(k, x)) = psi(phi(x))
// and globally
//   decoding_set_size  |D| = q^m.
// Keys are enumerated exhaustively when q^{2n} <= Cryptosystem::kExhaustiveCap
// (or always, with kExhaustive) and otherwise sampled from `seed`.
StructuralReport CheckStructuralProperties(
    const Cryptosystem& sys, ValidationLevel level = ValidationLevel::kAuto,
    std::uint64_t seed = 0, std::uint64_t sampled_keys = 64);

}  // namespace scslab

#endif  // SCSLAB_CRYPTO_H_

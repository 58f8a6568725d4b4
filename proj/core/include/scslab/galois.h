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

#ifndef SCSLAB_GALOIS_H_
#define SCSLAB_GALOIS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace scslab {

using Residue = std::uint32_t;

// A string over GF(q), stored as residues in [0, q).
using FieldVec = std::vector<Residue>;

// Arithmetic in the prime field GF(q). Only prime moduli are accepted; the
// constructor throws std::invalid_argument otherwise.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t order() const { return q_; }

  Residue Add(Residue a, Residue b) const;
  Residue Sub(Residue a, Residue b) const;
  Residue Mul(Residue a, Residue b) const;
  Residue Neg(Residue a) const;
  // Throws std::domain_error for a == 0.
  Residue Inv(Residue a) const;

  bool Contains(Residue a) const { return a < q_; }

  // Componentwise x + y and x - y. Lengths must agree.
  FieldVec AddVec(std::span<const Residue> x, std::span<const Residue> y) const;
  FieldVec SubVec(std::span<const Residue> x, std::span<const Residue> y) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  void Check(Residue a) const;

  std::uint32_t q_;
};

bool IsPrime(std::uint64_t q);

// q^len as an exact integer; throws std::overflow_error past 2^62.
std::uint64_t IntPow(std::uint64_t q, std::size_t len);

// Sequences of length `len` over [0, q) are numbered base q with the first
// symbol most significant, so numeric order is lexicographic order.
std::uint64_t SequenceToIndex(std::span<const Residue> seq, std::uint32_t q);
FieldVec IndexToSequence(std::uint64_t index, std::size_t len, std::uint32_t q);

// Componentwise sum and difference of two length-`len` sequences given by
// index, returned as an index.
std::uint64_t AddIndices(std::uint64_t a, std::uint64_t b, std::size_t len,
                         std::uint32_t q);
std::uint64_t SubIndices(std::uint64_t a, std::uint64_t b, std::size_t len,
                         std::uint32_t q);

// The affine key encoder k -> kA + b with k a row vector of length n, A an
// n x m matrix and b of length m.
class AffineMap {
 public:
  AffineMap(PrimeField field, std::size_t n, std::size_t m,
            std::vector<Residue> matrix, FieldVec offset);

  static AffineMap Zero(PrimeField field, std::size_t n, std::size_t m);
  // A = [I_m; 0] (first m coordinates of k), b = 0. Requires n >= m.
  static AffineMap Projection(PrimeField field, std::size_t n, std::size_t m);
  // Entries of A and b i.i.d. uniform over GF(q); matrix drawn row-major
  // first, then the offset. Deterministic in `seed`.
  static AffineMap Random(std::size_t n, std::size_t m, PrimeField field,
                          std::uint64_t seed);

  const PrimeField& field() const { return field_; }
  std::size_t input_length() const { return n_; }
  std::size_t output_length() const { return m_; }
  Residue entry(std::size_t row, std::size_t col) const {
    return matrix_[row * m_ + col];
  }
  const std::vector<Residue>& matrix() const { return matrix_; }
  const FieldVec& offset() const { return offset_; }

  FieldVec Apply(std::span<const Residue> k) const;

  // Rank of A over GF(q).
  std::size_t Rank() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  PrimeField field_;
  std::size_t n_;
  std::size_t m_;
  std::vector<Residue> matrix_;  // row-major n x m
  FieldVec offset_;
};

}  // namespace scslab

#endif  // SCSLAB_GALOIS_H_

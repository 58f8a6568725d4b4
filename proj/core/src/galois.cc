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

#include "scslab/galois.h"

#include <stdexcept>
#include <string>
#include <utility>

#include "scslab/rng.h"

namespace scslab {

bool IsPrime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!IsPrime(q)) {
    throw std::invalid_argument("field order " + std::to_string(q) +
                                " is not prime");
  }
}

void PrimeField::Check(Residue a) const {
  if (a >= q_) {
    throw std::out_of_range("residue " + std::to_string(a) +
                            " outside GF(" + std::to_string(q_) + ")");
  }
}

Residue PrimeField::Add(Residue a, Residue b) const {
  Check(a);
  Check(b);
  return static_cast<Residue>((std::uint64_t{a} + b) % q_);
}

Residue PrimeField::Sub(Residue a, Residue b) const {
  Check(a);
  Check(b);
  return static_cast<Residue>((std::uint64_t{a} + q_ - b) % q_);
}

Residue PrimeField::Mul(Residue a, Residue b) const {
  Check(a);
  Check(b);
  return static_cast<Residue>((std::uint64_t{a} * b) % q_);
}

Residue PrimeField::Neg(Residue a) const { return Sub(0, a); }

Residue PrimeField::Inv(Residue a) const {
  Check(a);
  if (a == 0) throw std::domain_error("inverse of 0 in GF(q)");
  // Fermat: a^(q-2).
  std::uint64_t result = 1;
  std::uint64_t base = a;
  std::uint64_t e = q_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

FieldVec PrimeField::AddVec(std::span<const Residue> x,
                            std::span<const Residue> y) const {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  FieldVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = Add(x[i], y[i]);
  return out;
}

FieldVec PrimeField::SubVec(std::span<const Residue> x,
                            std::span<const Residue> y) const {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  FieldVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = Sub(x[i], y[i]);
  return out;
}

std::uint64_t IntPow(std::uint64_t q, std::size_t len) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (r > (std::uint64_t{1} << 62) / q) {
      throw std::overflow_error("q^n exceeds 2^62");
    }
    r *= q;
  }
  return r;
}

std::uint64_t SequenceToIndex(std::span<const Residue> seq, std::uint32_t q) {
  std::uint64_t index = 0;
  for (Residue s : seq) {
    if (s >= q) throw std::out_of_range("symbol outside alphabet");
    index = index * q + s;
  }
  return index;
}

FieldVec IndexToSequence(std::uint64_t index, std::size_t len,
                         std::uint32_t q) {
  FieldVec seq(len);
  for (std::size_t i = len; i-- > 0;) {
    seq[i] = static_cast<Residue>(index % q);
    index /= q;
  }
  if (index != 0) throw std::out_of_range("index exceeds q^len");
  return seq;
}

std::uint64_t AddIndices(std::uint64_t a, std::uint64_t b, std::size_t len,
                         std::uint32_t q) {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::size_t i = 0; i < len; ++i) {
    out += ((a % q + b % q) % q) * place;
    a /= q;
    b /= q;
    place *= q;
  }
  return out;
}

std::uint64_t SubIndices(std::uint64_t a, std::uint64_t b, std::size_t len,
                         std::uint32_t q) {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::size_t i = 0; i < len; ++i) {
    out += ((a % q + q - b % q) % q) * place;
    a /= q;
    b /= q;
    place *= q;
  }
  return out;
}

AffineMap::AffineMap(PrimeField field, std::size_t n, std::size_t m,
                     std::vector<Residue> matrix, FieldVec offset)
    : field_(field),
      n_(n),
      m_(m),
      matrix_(std::move(matrix)),
      offset_(std::move(offset)) {
  if (matrix_.size() != n_ * m_) {
    throw std::invalid_argument("affine map: matrix must be n x m");
  }
  if (offset_.size() != m_) {
    throw std::invalid_argument("affine map: offset must have length m");
  }
  for (Residue r : matrix_) {
    if (!field_.Contains(r)) throw std::out_of_range("matrix entry >= q");
  }
  for (Residue r : offset_) {
    if (!field_.Contains(r)) throw std::out_of_range("offset entry >= q");
  }
}

AffineMap AffineMap::Zero(PrimeField field, std::size_t n, std::size_t m) {
  return AffineMap(field, n, m, std::vector<Residue>(n * m, 0),
                   FieldVec(m, 0));
}

AffineMap AffineMap::Projection(PrimeField field, std::size_t n,
                                std::size_t m) {
  if (m > n) throw std::invalid_argument("projection needs n >= m");
  std::vector<Residue> a(n * m, 0);
  for (std::size_t i = 0; i < m; ++i) a[i * m + i] = 1;
  return AffineMap(field, n, m, std::move(a), FieldVec(m, 0));
}

AffineMap AffineMap::Random(std::size_t n, std::size_t m, PrimeField field,
                            std::uint64_t seed) {
  if (m < 1 || n < m) throw std::invalid_argument("random affine: need n >= m >= 1");
  Rng rng(seed);
  std::vector<Residue> a(n * m);
  for (auto& e : a) e = static_cast<Residue>(rng.UniformBelow(field.order()));
  FieldVec b(m);
  for (auto& e : b) e = static_cast<Residue>(rng.UniformBelow(field.order()));
  return AffineMap(field, n, m, std::move(a), std::move(b));
}

FieldVec AffineMap::Apply(std::span<const Residue> k) const {
  if (k.size() != n_) {
    throw std::invalid_argument("affine map: key length " +
                                std::to_string(k.size()) + " != n = " +
                                std::to_string(n_));
  }
  const std::uint64_t q = field_.order();
  FieldVec out(m_);
  for (std::size_t j = 0; j < m_; ++j) {
    std::uint64_t acc = offset_[j];
    for (std::size_t i = 0; i < n_; ++i) {
      if (k[i] >= q) throw std::out_of_range("key symbol >= q");
      acc += std::uint64_t{k[i]} * matrix_[i * m_ + j];
      acc %= q;
    }
    out[j] = static_cast<Residue>(acc);
  }
  return out;
}

std::size_t AffineMap::Rank() const {
  std::vector<Residue> a = matrix_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m_ && rank < n_; ++col) {
    std::size_t pivot = rank;
    while (pivot < n_ && a[pivot * m_ + col] == 0) ++pivot;
    if (pivot == n_) continue;
    for (std::size_t c = 0; c < m_; ++c) {
      std::swap(a[pivot * m_ + c], a[rank * m_ + c]);
    }
    const Residue inv = field_.Inv(a[rank * m_ + col]);
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == rank || a[r * m_ + col] == 0) continue;
      const Residue factor = field_.Mul(a[r * m_ + col], inv);
      for (std::size_t c = 0; c < m_; ++c) {
        a[r * m_ + c] =
            field_.Sub(a[r * m_ + c], field_.Mul(factor, a[rank * m_ + c]));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace scslab

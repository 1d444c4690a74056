// Copyright 2026 The SpinStar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "spinstar/operators.hpp"

namespace spinstar::modular {

/// Prime 2^61 - 1. It is 3 mod 4, so Z_p[i] with i^2 = -1 is a field.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

/// Element of Z_p[i]: re + i im, both in [0, p).
struct Gaussian {
  std::uint64_t re = 0;
  std::uint64_t im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

Gaussian add(Gaussian a, Gaussian b);
Gaussian sub(Gaussian a, Gaussian b);
Gaussian mul(Gaussian a, Gaussian b);
Gaussian inverse(Gaussian a);

/// Exact image of a double. Every finite double is a dyadic rational m 2^e,
/// and 2 is invertible mod p.
std::uint64_t from_double(double x);
Gaussian from_complex(Complex z);

/// Square matrix over Z_p[i], row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(Index dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim)) {}
  /// Exact entrywise image of a floating-point operator.
  static Matrix from_dense(const DenseOperator& m);

  Index dim() const { return dim_; }
  Gaussian& operator()(Index r, Index c) {
    return data_[static_cast<std::size_t>(r * dim_ + c)];
  }
  const Gaussian& operator()(Index r, Index c) const {
    return data_[static_cast<std::size_t>(r * dim_ + c)];
  }
  const std::vector<Gaussian>& entries() const { return data_; }

  Matrix& operator+=(const Matrix& other);
  Matrix scaled(Gaussian factor) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  Index dim_ = 0;
  std::vector<Gaussian> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

/// Incremental row echelon form over Z_p[i] for exact rank tracking of
/// flattened matrices.
class Echelon {
 public:
  explicit Echelon(std::size_t length) : length_(length) {}

  std::size_t rank() const { return rows_.size(); }
  /// Adds `m` if it is independent of the stored rows; returns whether it was.
  bool insert(const Matrix& m);
  /// Membership in the span of the first `rows` inserted elements.
  bool in_span(const Matrix& m, std::size_t rows) const;
  bool in_span(const Matrix& m) const { return in_span(m, rank()); }

 private:
  std::vector<Gaussian> reduce(const Matrix& m, std::size_t rows) const;

  std::size_t length_;
  std::vector<std::vector<Gaussian>> rows_;  // pivot entry normalized to 1
  std::vector<std::size_t> pivots_;
};

}  // namespace spinstar::modular

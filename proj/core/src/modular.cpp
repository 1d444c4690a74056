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

#include "spinstar/modular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinstar/errors.hpp"

namespace spinstar::modular {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

inline u64 reduce128(u128 z) {
  // 2^61 = 1 (mod p)
  u64 r = static_cast<u64>(z & kPrime) + static_cast<u64>(z >> 61);
  r = (r & kPrime) + (r >> 61);
  return r >= kPrime ? r - kPrime : r;
}

inline u64 add_mod(u64 a, u64 b) {
  const u64 s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

inline u64 sub_mod(u64 a, u64 b) { return a >= b ? a - b : a + kPrime - b; }

inline u64 mul_mod(u64 a, u64 b) {
  return reduce128(static_cast<u128>(a) * b);
}

u64 pow_mod(u64 base, u64 exp) {
  u64 result = 1;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base);
    base = mul_mod(base, base);
    exp >>= 1;
  }
  return result;
}

}  // namespace

Gaussian add(Gaussian a, Gaussian b) {
  return {add_mod(a.re, b.re), add_mod(a.im, b.im)};
}

Gaussian sub(Gaussian a, Gaussian b) {
  return {sub_mod(a.re, b.re), sub_mod(a.im, b.im)};
}

Gaussian mul(Gaussian a, Gaussian b) {
  return {sub_mod(mul_mod(a.re, b.re), mul_mod(a.im, b.im)),
          add_mod(mul_mod(a.re, b.im), mul_mod(a.im, b.re))};
}

Gaussian inverse(Gaussian a) {
  // 1/(x + iy) = (x - iy) / (x^2 + y^2); x^2 + y^2 != 0 since p = 3 mod 4.
  const u64 norm = add_mod(mul_mod(a.re, a.re), mul_mod(a.im, a.im));
  if (norm == 0) throw std::domain_error("modular inverse of zero");
  const u64 inv = pow_mod(norm, kPrime - 2);
  return {mul_mod(a.re, inv), mul_mod(sub_mod(0, a.im), inv)};
}

u64 from_double(double x) {
  if (!std::isfinite(x)) throw ConfigError("cannot map non-finite value");
  if (x == 0.0) return 0;
  int exponent = 0;
  const double fraction = std::frexp(std::abs(x), &exponent);  // [0.5, 1)
  const auto mantissa = static_cast<u64>(std::ldexp(fraction, 53));
  exponent -= 53;
  // 2^61 = 1, so powers of two reduce modulo 61.
  const int shift = ((exponent % 61) + 61) % 61;
  u64 value = mul_mod(mantissa % kPrime, pow_mod(2, static_cast<u64>(shift)));
  return x < 0.0 ? sub_mod(0, value) : value;
}

Gaussian from_complex(Complex z) {
  return {from_double(z.real()), from_double(z.imag())};
}

Matrix Matrix::from_dense(const DenseOperator& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("modular: not square");
  Matrix out(m.rows());
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out(r, c) = from_complex(m(r, c));
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("modular: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] = add(data_[i], other.data_[i]);
  }
  return *this;
}

Matrix Matrix::scaled(Gaussian factor) const {
  Matrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = mul(data_[i], factor);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("modular: shape mismatch");
  const Index n = a.dim_;
  Matrix out(n);
  // Accumulate unreduced 122-bit products in 128-bit sums; flush every
  // 32 terms so the sums cannot overflow.
  std::vector<u128> acc_re(static_cast<std::size_t>(n));
  std::vector<u128> acc_im(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    std::fill(acc_re.begin(), acc_re.end(), u128{0});
    std::fill(acc_im.begin(), acc_im.end(), u128{0});
    int pending = 0;
    for (Index k = 0; k < n; ++k) {
      const Gaussian x = a(i, k);
      if (x.is_zero()) continue;
      const u64 x_re = x.re;
      const u64 x_im = x.im;
      const u64 x_im_neg = sub_mod(0, x.im);
      const Gaussian* row = &b.data_[static_cast<std::size_t>(k * n)];
      for (Index j = 0; j < n; ++j) {
        const Gaussian y = row[j];
        acc_re[static_cast<std::size_t>(j)] +=
            static_cast<u128>(x_re) * y.re + static_cast<u128>(x_im_neg) * y.im;
        acc_im[static_cast<std::size_t>(j)] +=
            static_cast<u128>(x_re) * y.im + static_cast<u128>(x_im) * y.re;
      }
      if (++pending == 32) {
        for (std::size_t j = 0; j < acc_re.size(); ++j) {
          acc_re[j] = reduce128(acc_re[j]);
          acc_im[j] = reduce128(acc_im[j]);
        }
        pending = 0;
      }
    }
    for (Index j = 0; j < n; ++j) {
      out(i, j) = {reduce128(acc_re[static_cast<std::size_t>(j)]),
                   reduce128(acc_im[static_cast<std::size_t>(j)])};
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  Matrix ab = a * b;
  const Matrix ba = b * a;
  Matrix out(a.dim());
  for (Index r = 0; r < a.dim(); ++r) {
    for (Index c = 0; c < a.dim(); ++c) out(r, c) = sub(ab(r, c), ba(r, c));
  }
  return out;
}

std::vector<Gaussian> Echelon::reduce(const Matrix& m,
                                      std::size_t rows) const {
  if (m.entries().size() != length_) {
    throw DimensionMismatch("modular echelon: length mismatch");
  }
  std::vector<Gaussian> v = m.entries();
  rows = std::min(rows, rows_.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const Gaussian factor = v[pivots_[r]];
    if (factor.is_zero()) continue;
    const auto& row = rows_[r];
    for (std::size_t j = pivots_[r]; j < length_; ++j) {
      if (!row[j].is_zero()) v[j] = sub(v[j], mul(factor, row[j]));
    }
  }
  return v;
}

bool Echelon::insert(const Matrix& m) {
  std::vector<Gaussian> v = reduce(m, rows_.size());
  std::size_t pivot = 0;
  while (pivot < length_ && v[pivot].is_zero()) ++pivot;
  if (pivot == length_) return false;
  const Gaussian scale = inverse(v[pivot]);
  for (std::size_t j = pivot; j < length_; ++j) v[j] = mul(v[j], scale);
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

bool Echelon::in_span(const Matrix& m, std::size_t rows) const {
  const std::vector<Gaussian> v = reduce(m, rows);
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

}  // namespace spinstar::modular

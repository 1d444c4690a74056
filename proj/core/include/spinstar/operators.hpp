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

#include <complex>

#include <Eigen/Dense>

namespace spinstar {

using Complex = std::complex<double>;

/// Dense square operator on a 2^(N+1)-dimensional spin space. Row-major.
using DenseOperator =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical tolerances shared by all modules.
struct Tolerances {
  double hermitian = 1e-12;       // max|M - M^dagger|
  double unitary = 1e-10;         // max|M^dagger M - 1|
  double reconstruction = 1e-10;  // max|V diag(l) V^dagger - H|
  double degenerate_gap = 1e-12;  // eigenvalue gap treated as degenerate
  double lie_rank = 1e-8;         // relative Gram-Schmidt residual
};

const Tolerances& default_tolerances();

enum class Axis { x, y, z };

namespace pauli {
DenseOperator identity(Index dim);
DenseOperator sigma(Axis axis);
DenseOperator sigma_x();
DenseOperator sigma_y();
DenseOperator sigma_z();
/// (sigma_x + i sigma_y) / 2, raising.
DenseOperator sigma_plus();
/// (sigma_x - i sigma_y) / 2, lowering.
DenseOperator sigma_minus();
}  // namespace pauli

inline constexpr Complex kI{0.0, 1.0};

/// Kronecker product; the index of `a` varies slower.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

/// ab - ba.
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const DenseOperator& a, const DenseOperator& b);

double max_abs(const DenseOperator& m);
double hermiticity_defect(const DenseOperator& m);
double skew_hermiticity_defect(const DenseOperator& m);
double unitarity_defect(const DenseOperator& m);

bool is_hermitian(const DenseOperator& m,
                  double tol = default_tolerances().hermitian);
bool is_skew_hermitian(const DenseOperator& m,
                       double tol = default_tolerances().hermitian);
bool is_unitary(const DenseOperator& m,
                double tol = default_tolerances().unitary);

struct SpectralDecomposition {
  RealVector eigenvalues;      // ascending
  DenseOperator eigenvectors;  // columns, unitary

  DenseOperator reconstruct() const;
};

/// Throws StructureError when `h` is not Hermitian within `tol`.
SpectralDecomposition eig_hermitian(
    const DenseOperator& h, double tol = default_tolerances().hermitian);

/// exp(-i h t) through the spectral decomposition of `h`.
DenseOperator expm_unitary(const DenseOperator& h, double t);
DenseOperator expm_unitary(const SpectralDecomposition& spectrum, double t);

/// Sum of singular values.
double trace_norm(const DenseOperator& q);

struct PolarDecomposition {
  DenseOperator unitary;  // W in q = W P
  double trace_norm = 0.0;
};

/// q = W P with P >= 0. For singular q the null spaces are paired as the SVD
/// returns them, so W is always unitary.
PolarDecomposition polar(const DenseOperator& q);
DenseOperator polar_unitary(const DenseOperator& q);

/// Partial trace over the leading tensor factor of dimension `leading_dim`.
DenseOperator partial_trace_leading(const DenseOperator& m, Index leading_dim);

}  // namespace spinstar

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

#include "spinstar/operators.hpp"

#include <cmath>
#include <string>

#include "spinstar/errors.hpp"

namespace spinstar {

const Tolerances& default_tolerances() {
  static const Tolerances tolerances{};
  return tolerances;
}

namespace pauli {

DenseOperator identity(Index dim) {
  return DenseOperator::Identity(dim, dim);
}

DenseOperator sigma_x() {
  DenseOperator m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

DenseOperator sigma_y() {
  DenseOperator m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

DenseOperator sigma_z() {
  DenseOperator m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

DenseOperator sigma(Axis axis) {
  switch (axis) {
    case Axis::x:
      return sigma_x();
    case Axis::y:
      return sigma_y();
    case Axis::z:
      return sigma_z();
  }
  return sigma_z();
}

DenseOperator sigma_plus() {
  DenseOperator m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

DenseOperator sigma_minus() {
  DenseOperator m(2, 2);
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

}  // namespace pauli

namespace {

void require_same_shape(const DenseOperator& a, const DenseOperator& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": operand shapes " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " differ");
  }
}

void require_square(const DenseOperator& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  require_same_shape(a, b, "commutator");
  require_square(a, "commutator");
  DenseOperator out = a * b;
  out.noalias() -= b * a;
  return out;
}

Complex hs_inner(const DenseOperator& a, const DenseOperator& b) {
  require_same_shape(a, b, "hs_inner");
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return (a.array().conjugate() * b.array()).sum();
}

double max_abs(const DenseOperator& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const DenseOperator& m) {
  require_square(m, "hermiticity_defect");
  return max_abs(m - m.adjoint());
}

double skew_hermiticity_defect(const DenseOperator& m) {
  require_square(m, "skew_hermiticity_defect");
  return max_abs(m + m.adjoint());
}

double unitarity_defect(const DenseOperator& m) {
  require_square(m, "unitarity_defect");
  return max_abs(m.adjoint() * m - DenseOperator::Identity(m.rows(), m.cols()));
}

bool is_hermitian(const DenseOperator& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

bool is_skew_hermitian(const DenseOperator& m, double tol) {
  return m.rows() == m.cols() && skew_hermiticity_defect(m) <= tol;
}

bool is_unitary(const DenseOperator& m, double tol) {
  return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

DenseOperator SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

SpectralDecomposition eig_hermitian(const DenseOperator& h, double tol) {
  require_square(h, "eig_hermitian");
  const double defect = hermiticity_defect(h);
  if (defect > tol) {
    throw StructureError("eig_hermitian: input is not Hermitian (defect " +
                         std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(h), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  // Eigen returns eigenvalues in ascending order.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DenseOperator expm_unitary(const SpectralDecomposition& spectrum, double t) {
  const auto& v = spectrum.eigenvectors;
  Eigen::VectorXcd phases(spectrum.eigenvalues.size());
  for (Index j = 0; j < phases.size(); ++j) {
    phases(j) = std::exp(-kI * spectrum.eigenvalues(j) * t);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

DenseOperator expm_unitary(const DenseOperator& h, double t) {
  return expm_unitary(eig_hermitian(h), t);
}

double trace_norm(const DenseOperator& q) {
  require_square(q, "trace_norm");
  if (q.size() == 0) return 0.0;
  const Eigen::MatrixXcd dense = q;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues().sum();
}

PolarDecomposition polar(const DenseOperator& q) {
  require_square(q, "polar");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(
      Eigen::MatrixXcd(q), Eigen::ComputeFullU | Eigen::ComputeFullV);
  PolarDecomposition out;
  out.unitary = svd.matrixU() * svd.matrixV().adjoint();
  out.trace_norm = svd.singularValues().sum();
  return out;
}

DenseOperator polar_unitary(const DenseOperator& q) {
  return polar(q).unitary;
}

DenseOperator partial_trace_leading(const DenseOperator& m, Index leading_dim) {
  require_square(m, "partial_trace_leading");
  if (leading_dim <= 0 || m.rows() % leading_dim != 0) {
    throw DimensionMismatch("partial_trace_leading: leading dimension " +
                            std::to_string(leading_dim) +
                            " does not divide " + std::to_string(m.rows()));
  }
  const Index rest = m.rows() / leading_dim;
  DenseOperator out = DenseOperator::Zero(rest, rest);
  for (Index s = 0; s < leading_dim; ++s) {
    out += m.block(s * rest, s * rest, rest, rest);
  }
  return out;
}

}  // namespace spinstar

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

#include "spinstar/lie_closure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinstar/errors.hpp"
#include "spinstar/modular.hpp"

namespace spinstar {

namespace {

Eigen::VectorXd to_coordinates(const DenseOperator& m) {
  const Index n = m.size();
  Eigen::VectorXd v(2 * n);
  const Complex* data = m.data();
  for (Index i = 0; i < n; ++i) {
    v(i) = data[i].real();
    v(n + i) = data[i].imag();
  }
  return v;
}

DenseOperator from_coordinates(const Eigen::Ref<const Eigen::VectorXd>& v,
                               Index dim) {
  DenseOperator m(dim, dim);
  const Index n = m.size();
  Complex* data = m.data();
  for (Index i = 0; i < n; ++i) data[i] = Complex(v(i), v(n + i));
  return m;
}

/// Growable column store for the orthonormal basis coordinates.
class BasisStore {
 public:
  explicit BasisStore(Index rows) : q_(rows, 16) {}

  Index size() const { return size_; }
  auto columns() const { return q_.leftCols(size_); }

  void append(const Eigen::VectorXd& v) {
    if (size_ == q_.cols()) q_.conservativeResize(Eigen::NoChange, 2 * size_);
    q_.col(size_++) = v;
  }

  /// Removes the span components from `v` (classical Gram-Schmidt applied
  /// twice, which restores orthogonality lost in the first pass).
  void orthogonalize(Eigen::VectorXd& v) const {
    if (size_ == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeff = columns().transpose() * v;
      v.noalias() -= columns() * coeff;
    }
  }

  Eigen::MatrixXd release() {
    q_.conservativeResize(Eigen::NoChange, size_);
    return std::move(q_);
  }

 private:
  Eigen::MatrixXd q_;
  Index size_ = 0;
};

struct ClosureBuilder {
  Index dim;
  ClosureOptions options;
  std::size_t cap;
  BasisStore store;
  LieClosure out;
  /// Normalized raw commutators; deeper levels are built from these rather
  /// than from the orthonormal basis, which would feed the roundoff amplified
  /// by residual normalization back into every later level.
  std::vector<DenseOperator> representatives;
  std::shared_ptr<modular::Echelon> echelon;
  std::vector<modular::Matrix> exact_representatives;

  ClosureBuilder(Index d, const ClosureOptions& o, std::size_t c)
      : dim(d),
        options(o),
        cap(c),
        store(2 * d * d),
        echelon(std::make_shared<modular::Echelon>(
            static_cast<std::size_t>(d * d))) {
    out.dim_hilbert = d;
  }

  bool exact() const { return options.rank_test == RankTest::exact; }
  bool full() const { return out.basis.size() >= cap; }

  /// Returns true if the candidate enlarged the span. `scale` bounds the size
  /// of the candidate's inputs: under the numerical test a commutator that
  /// cancels down to roundoff must not be normalized into a new direction.
  bool offer(const DenseOperator& candidate, modular::Matrix exact_candidate,
             int depth, double scale) {
    Eigen::VectorXd v = to_coordinates(candidate);
    const double norm = v.norm();
    if (exact()) {
      if (!echelon->insert(exact_candidate)) return false;
    } else if (norm < 1e-300) {
      return false;
    }
    store.orthogonalize(v);
    const double residual = v.norm();
    if (!exact() && residual <= options.tol * std::max(norm, scale)) {
      return false;
    }
    if (residual < 1e-300) {
      throw std::runtime_error(
          "closure: exactly independent element vanished in floating point");
    }
    v /= residual;
    // Keep the stored operator exactly skew-Hermitian.
    DenseOperator element = from_coordinates(v, dim);
    element = 0.5 * (element - element.adjoint()).eval();
    v = to_coordinates(element);
    v /= v.norm();
    store.append(v);
    out.basis.push_back(from_coordinates(v, dim));
    out.depth.push_back(depth);
    out.independence.push_back(residual / norm);
    representatives.push_back(candidate / norm);
    if (exact()) exact_representatives.push_back(std::move(exact_candidate));
    return true;
  }
};

void validate_generators(std::span<const DenseOperator> generators) {
  if (generators.empty()) {
    throw std::invalid_argument("closure: at least one generator required");
  }
  const Index dim = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != dim || g.cols() != dim) {
      throw DimensionMismatch("closure: generators have different shapes");
    }
    if (!is_skew_hermitian(g, 1e-10)) {
      throw StructureError("closure: generator is not skew-Hermitian");
    }
  }
}

/// `exact_generators` must be the exact images of `generators`, or empty
/// when the numerical rank test is used.
LieClosure build_closure(std::span<const DenseOperator> generators,
                         std::span<const modular::Matrix> exact_generators,
                         const ClosureOptions& options) {
  validate_generators(generators);
  const Index dim = generators.front().rows();
  bool traceless = true;
  for (const auto& g : generators) {
    if (std::abs(g.trace()) > 1e-10) traceless = false;
  }
  const auto d2 = static_cast<std::size_t>(dim * dim);
  ClosureBuilder builder(dim, options, traceless ? d2 - 1 : d2);
  builder.out.generator_count = static_cast<int>(generators.size());
  const bool exact = builder.exact();

  std::vector<double> generator_norms;
  for (const auto& g : generators) generator_norms.push_back(g.norm());

  std::vector<std::size_t> frontier;
  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    if (builder.full()) break;
    if (builder.offer(generators[gi],
                      exact ? exact_generators[gi] : modular::Matrix{}, 0,
                      0.0)) {
      frontier.push_back(builder.out.basis.size() - 1);
    }
  }

  int level = 0;
  while (!frontier.empty() && !builder.full() &&
         (options.max_depth < 0 || level < options.max_depth)) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      // Copies: offer() may reallocate the representative stores.
      const DenseOperator element = builder.representatives[idx];
      const modular::Matrix exact_element =
          exact ? builder.exact_representatives[idx] : modular::Matrix{};
      for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        if (builder.full()) break;
        modular::Matrix exact_candidate =
            exact ? modular::commutator(exact_element, exact_generators[gi])
                  : modular::Matrix{};
        if (builder.offer(commutator(element, generators[gi]),
                          std::move(exact_candidate), level + 1,
                          element.norm() * generator_norms[gi])) {
          next.push_back(builder.out.basis.size() - 1);
        }
      }
    }
    frontier = std::move(next);
    ++level;
  }
  builder.out.saturated = builder.full();
  builder.out.coordinates = builder.store.release();
  if (exact) builder.out.exact_span = std::move(builder.echelon);
  return std::move(builder.out);
}

}  // namespace

std::size_t LieClosure::span_size_at_depth(int k) const {
  return static_cast<std::size_t>(
      std::upper_bound(depth.begin(), depth.end(), k) - depth.begin());
}

LieClosure closure(std::span<const DenseOperator> generators,
                   const ClosureOptions& options) {
  std::vector<modular::Matrix> exact;
  if (options.rank_test == RankTest::exact) {
    validate_generators(generators);
    for (const auto& g : generators) {
      exact.push_back(modular::Matrix::from_dense(g));
    }
  }
  return build_closure(generators, exact, options);
}

std::vector<DenseOperator> spin_star_generators(const SpinStarSystem& sys) {
  return {kI * control_hamiltonian(sys), kI * drift_hamiltonian(sys)};
}

std::int64_t dimension_formula(int n_bath) {
  if (n_bath < 0) throw std::invalid_argument("dimension_formula: N < 0");
  const std::int64_t n = n_bath;
  if (n % 2 == 0) return (2 + n) * (9 + 4 * n * (4 + n)) / 6;
  return (1 + n) * (3 + 2 * n) * (7 + 2 * n) / 6;
}

std::int64_t full_su_dimension(int n_bath) {
  if (n_bath < 0) throw std::invalid_argument("full_su_dimension: N < 0");
  return (std::int64_t{1} << (2 * (n_bath + 1))) - 1;
}

std::uint64_t expected_closure_dim(const SpinStarSystem& sys) {
  if (sys.has_equal_couplings()) {
    return static_cast<std::uint64_t>(dimension_formula(sys.n_bath()));
  }
  return static_cast<std::uint64_t>(full_su_dimension(sys.n_bath()));
}

void check_closure_memory(const SpinStarSystem& sys,
                          std::uint64_t limit_bytes) {
  const auto d = static_cast<std::uint64_t>(sys.dim());
  // Per element: the orthonormal operator, its real coordinates and the raw
  // representative (16 bytes per entry each), plus the exact echelon row and
  // exact representative (16 bytes each).
  const std::uint64_t bytes = expected_closure_dim(sys) * d * d * 80;
  if (bytes > limit_bytes) {
    std::ostringstream msg;
    msg << "closure for N=" << sys.n_bath() << " ("
        << to_string(sys.scheme().kind) << " couplings) needs about "
        << (bytes >> 20) << " MiB, limit is " << (limit_bytes >> 20) << " MiB";
    throw ResourceLimitError(msg.str());
  }
}

namespace {

/// Exact images of {i H_c, i H_0} built from the coupling values, so that the
/// exact drift does not inherit rounding from floating-point summation.
std::vector<modular::Matrix> exact_spin_star_generators(
    const SpinStarSystem& sys) {
  using modular::Matrix;
  Matrix control = Matrix::from_dense(kI * control_hamiltonian(sys));
  Matrix drift = Matrix::from_dense(kI * central_pauli(sys, Axis::y));
  const auto& a = sys.couplings();
  for (int k = 1; k <= sys.n_bath(); ++k) {
    DenseOperator exchange = DenseOperator::Zero(sys.dim(), sys.dim());
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
      exchange.noalias() += central_pauli(sys, axis) * bath_pauli(sys, k, axis);
    }
    // Entries of i sigma.sigma are small Gaussian integers, exact in double.
    const modular::Gaussian coupling{
        modular::from_double(a[static_cast<std::size_t>(k - 1)]), 0};
    drift += Matrix::from_dense(kI * exchange).scaled(coupling);
  }
  return {std::move(control), std::move(drift)};
}

}  // namespace

LieClosure closure(const SpinStarSystem& sys, const ClosureOptions& options) {
  check_closure_memory(sys, options.memory_limit_bytes);
  const auto generators = spin_star_generators(sys);
  std::vector<modular::Matrix> exact;
  if (options.rank_test == RankTest::exact) {
    exact = exact_spin_star_generators(sys);
  }
  return build_closure(generators, exact, options);
}

namespace {

Eigen::VectorXd checked_coordinates(const LieClosure& closure,
                                    const DenseOperator& target) {
  if (target.rows() != closure.dim_hilbert ||
      target.cols() != closure.dim_hilbert) {
    throw DimensionMismatch("target dimension does not match the closure");
  }
  if (!is_skew_hermitian(target, 1e-9 * std::max(1.0, max_abs(target)))) {
    throw StructureError("target is not skew-Hermitian");
  }
  return to_coordinates(target);
}

}  // namespace

Membership contains(const LieClosure& closure, const DenseOperator& target,
                    double tol) {
  Eigen::VectorXd v = checked_coordinates(closure, target);
  Membership out;
  const double norm = v.norm();
  if (norm > 0.0) {
    const auto& q = closure.coordinates;
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeff = q.transpose() * v;
      v.noalias() -= q * coeff;
    }
    out.residual = v.norm() / norm;
  }
  if (closure.exact_span) {
    out.exact = true;
    out.contained =
        closure.exact_span->in_span(modular::Matrix::from_dense(target));
  } else {
    out.contained = out.residual <= tol;
  }
  return out;
}

int element_depth(const LieClosure& closure, const DenseOperator& target,
                  double tol) {
  const Eigen::VectorXd t = checked_coordinates(closure, target);
  const double norm = t.norm();
  if (norm == 0.0) return 0;
  const modular::Matrix exact_target =
      closure.exact_span ? modular::Matrix::from_dense(target)
                         : modular::Matrix{};
  for (int k = 0; k <= closure.max_depth(); ++k) {
    const std::size_t n = closure.span_size_at_depth(k);
    if (closure.exact_span) {
      if (closure.exact_span->in_span(exact_target, n)) return k;
      continue;
    }
    const auto q = closure.coordinates.leftCols(static_cast<Index>(n));
    Eigen::VectorXd v = t;
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeff = q.transpose() * v;
      v.noalias() -= q * coeff;
    }
    if (v.norm() <= tol * norm) return k;
  }
  throw NotContained("element is not contained in the closure");
}

DenseOperator ladder_element(const SpinStarSystem& sys, Axis axis, int l, int k,
                             int s) {
  if (l < 0 || k < 0 || s < 0) {
    throw std::invalid_argument("ladder_element: negative power");
  }
  const Index d = sys.dim();
  DenseOperator bath = DenseOperator::Identity(d, d);
  if (l + k + s > 0) {
    const DenseOperator jp = bath_j_plus(sys);
    const DenseOperator jm = bath_j_minus(sys);
    const DenseOperator jz = bath_angular_momentum(sys, Axis::z);
    for (int i = 0; i < l; ++i) bath = (bath * jp).eval();
    for (int i = 0; i < k; ++i) bath = (bath * jm).eval();
    for (int i = 0; i < s; ++i) bath = (bath * jz).eval();
  }
  const DenseOperator hermitian_part = bath + bath.adjoint();
  return kI * (central_pauli(sys, axis) * hermitian_part);
}

LadderBasisReport verify_equal_coupling_basis(const SpinStarSystem& sys,
                                              const LieClosure& closure,
                                              int max_order, double tol) {
  if (!sys.has_equal_couplings()) {
    throw ConfigError("ladder basis check requires equal couplings");
  }
  if (sys.n_bath() < 1) {
    throw ConfigError("ladder basis check requires at least one bath spin");
  }
  LadderBasisReport report;
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    for (int l = 0; l <= max_order; ++l) {
      for (int k = 0; l + k <= max_order; ++k) {
        for (int s = 0; l + k + s <= max_order; ++s) {
          LadderElementCheck check{axis, l, k, s, {}};
          const DenseOperator element = ladder_element(sys, axis, l, k, s);
          check.membership = contains(closure, element, tol);
          report.max_residual =
              std::max(report.max_residual, check.membership.residual);
          report.all_contained =
              report.all_contained && check.membership.contained;
          report.checks.push_back(check);
        }
      }
    }
  }
  return report;
}

CouplingAssumptions coupling_assumptions_check(std::span<const double> h,
                                               double tol) {
  CouplingAssumptions out;
  const std::size_t n = h.size();
  auto fmt = [](double x) {
    std::ostringstream s;
    s << x;
    return s.str();
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::abs(std::abs(h[a]) - std::abs(h[b])) <= tol) {
        out.distinct_magnitudes = false;
        out.violations.push_back("|h" + std::to_string(a + 1) + "| = |h" +
                                 std::to_string(b + 1) + "| = " +
                                 fmt(std::abs(h[a])));
      }
    }
  }
  struct Gap {
    std::size_t i, j;
    double value;
  };
  std::vector<Gap> gaps;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      gaps.push_back({a, b, std::abs(h[b] - h[a])});
    }
  }
  for (std::size_t p = 0; p < gaps.size(); ++p) {
    for (std::size_t q = p + 1; q < gaps.size(); ++q) {
      if (std::abs(gaps[p].value - gaps[q].value) <= tol) {
        out.distinct_gaps = false;
        out.violations.push_back(
            "|h" + std::to_string(gaps[p].j + 1) + " - h" +
            std::to_string(gaps[p].i + 1) + "| = |h" +
            std::to_string(gaps[q].j + 1) + " - h" +
            std::to_string(gaps[q].i + 1) + "| = " + fmt(gaps[p].value));
      }
    }
  }
  return out;
}

}  // namespace spinstar

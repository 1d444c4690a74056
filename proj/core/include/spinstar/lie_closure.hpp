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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spinstar/modular.hpp"
#include "spinstar/operators.hpp"
#include "spinstar/spin_star.hpp"

namespace spinstar {

/// Real Lie algebra generated by skew-Hermitian generators, stored as a
/// Hilbert-Schmidt orthonormal basis in order of construction.
///
/// depth[i] is the commutator level at which basis[i] first appeared:
/// generators have depth 0 and level k+1 holds whatever [level k, generators]
/// adds to the span. Spans by level do not depend on the order in which
/// commutators are taken.
struct LieClosure {
  std::vector<DenseOperator> basis;
  std::vector<int> depth;
  int generator_count = 0;
  Index dim_hilbert = 0;
  /// Hit the su(d) size bound and stopped early.
  bool saturated = false;
  /// For each element, the norm of its floating-point residual relative to
  /// the candidate commutator it came from. Small values flag directions
  /// whose stored orthonormal vector carries amplified roundoff.
  std::vector<double> independence;
  /// Basis as real column vectors (real parts then imaginary parts), so the
  /// real inner product Re tr(a^dagger b) becomes a dot product.
  Eigen::MatrixXd coordinates;
  /// Exact span in construction order; set by the exact rank test.
  std::shared_ptr<const modular::Echelon> exact_span;

  std::size_t dim() const { return basis.size(); }
  int max_depth() const { return depth.empty() ? 0 : depth.back(); }
  /// Number of basis elements with depth <= k.
  std::size_t span_size_at_depth(int k) const;
};

enum class RankTest {
  /// Exact rank over the Gaussian rationals, computed modulo a 61-bit prime.
  exact,
  /// Floating-point Gram-Schmidt residual compared against `tol`.
  numerical,
};

struct ClosureOptions {
  RankTest rank_test = RankTest::exact;
  /// Relative residual below which a candidate counts as dependent
  /// (numerical rank test only).
  double tol = default_tolerances().lie_rank;
  /// Stop after this commutator level (negative: no limit).
  int max_depth = -1;
  /// Refuse closures whose expected storage exceeds this many bytes.
  std::uint64_t memory_limit_bytes = std::uint64_t{16} << 30;
};

/// Level-by-level commutator closure of `generators` with rank tracking.
/// With the exact rank test the entries of the generators are read as the
/// exact rationals they represent. Throws StructureError for
/// non-skew-Hermitian input and DimensionMismatch for unequal shapes.
LieClosure closure(std::span<const DenseOperator> generators,
                   const ClosureOptions& options = {});

/// Generators {i H_c, i H_0} in that order.
std::vector<DenseOperator> spin_star_generators(const SpinStarSystem& sys);

/// Closure of a spin star after a memory-guard check.
LieClosure closure(const SpinStarSystem& sys,
                   const ClosureOptions& options = {});

/// Expected algebra dimension for `sys`: the equal-coupling formula or
/// 4^(N+1)-1. Used by the memory guard.
std::uint64_t expected_closure_dim(const SpinStarSystem& sys);
/// Throws ResourceLimitError if a closure of `sys` would exceed `limit_bytes`.
void check_closure_memory(const SpinStarSystem& sys, std::uint64_t limit_bytes);

/// Dimension of the equal-coupling dynamical Lie algebra for N bath spins:
/// (2+N)(9+4N(4+N))/6 for even N, (1+N)(3+2N)(7+2N)/6 for odd N.
std::int64_t dimension_formula(int n_bath);

/// 4^(N+1) - 1.
std::int64_t full_su_dimension(int n_bath);

struct Membership {
  bool contained = false;
  /// ||target - P target|| / ||target|| against the orthonormal basis.
  double residual = 0.0;
  /// Whether `contained` is the exact verdict (entries of the target read as
  /// exact rationals) rather than the residual compared against tol.
  bool exact = false;
};

Membership contains(const LieClosure& closure, const DenseOperator& target,
                    double tol = default_tolerances().lie_rank);

/// Smallest level k whose span (depth <= k) contains `target`, decided
/// exactly when the closure carries an exact span.
/// Throws NotContained when the full closure does not contain it.
int element_depth(const LieClosure& closure, const DenseOperator& target,
                  double tol = default_tolerances().lie_rank);

struct LadderElementCheck {
  Axis axis = Axis::x;
  int l = 0;  // power of J+
  int k = 0;  // power of J-
  int s = 0;  // power of J_z
  Membership membership;
};

struct LadderBasisReport {
  std::vector<LadderElementCheck> checks;
  double max_residual = 0.0;
  bool all_contained = true;
};

/// i sigma_axis (J+^l J-^k J_z^s + h.c.).
DenseOperator ladder_element(const SpinStarSystem& sys, Axis axis, int l, int k,
                             int s);

/// Checks every ladder element with l+k+s <= max_order against the closure.
/// Equal couplings only (ConfigError otherwise).
LadderBasisReport verify_equal_coupling_basis(const SpinStarSystem& sys,
                                              const LieClosure& closure,
                                              int max_order = 3,
                                              double tol = 1e-7);

struct CouplingAssumptions {
  bool distinct_magnitudes = true;  // |h_n| != |h_m|
  bool distinct_gaps = true;        // |h_n - h_m| != |h_i - h_j|
  std::vector<std::string> violations;

  bool pass() const { return distinct_magnitudes && distinct_gaps; }
};

/// Genericity conditions on the couplings used by the full-controllability
/// argument. Advisory: nothing else depends on the result.
CouplingAssumptions coupling_assumptions_check(std::span<const double> couplings,
                                               double tol = 1e-12);

}  // namespace spinstar

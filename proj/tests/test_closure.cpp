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

#include <cstdint>
#include <vector>

#include <doctest.h>

#include "spinstar/errors.hpp"
#include "spinstar/lie_closure.hpp"

using namespace spinstar;

namespace {

/// Independent oracle: for equal couplings the bath splits into total-spin
/// sectors j, and the algebra acts as su(2(2j+1)) on each distinct sector.
std::int64_t sector_sum_dimension(int n) {
  std::int64_t total = 0;
  for (int twice_j = n % 2; twice_j <= n; twice_j += 2) {
    const std::int64_t block = 2 * (twice_j + 1);
    total += block * block - 1;
  }
  return total;
}

LieClosure equal_closure(int n, const ClosureOptions& opts = {}) {
  return closure(SpinStarSystem(n, CouplingScheme::equal(1.0)), opts);
}

}  // namespace

TEST_SUITE("lie-closure") {
  TEST_CASE("dimension formula values") {
    const std::vector<std::int64_t> expected{3, 15, 38, 78, 137, 221, 332, 476};
    for (int n = 0; n < static_cast<int>(expected.size()); ++n) {
      CHECK(dimension_formula(n) == expected[static_cast<std::size_t>(n)]);
      CHECK(dimension_formula(n) == sector_sum_dimension(n));
    }
    CHECK(full_su_dimension(1) == 15);
    CHECK(full_su_dimension(2) == 63);
    CHECK(full_su_dimension(3) == 255);
  }

  TEST_CASE("single spin generates su(2)") {
    const LieClosure c = equal_closure(0);
    CHECK(c.dim() == 3);
    CHECK(c.depth == std::vector<int>{0, 0, 1});
    CHECK(c.generator_count == 2);
  }

  TEST_CASE("equal couplings match the formula") {
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(n);
      const LieClosure c = equal_closure(n);
      CHECK(static_cast<std::int64_t>(c.dim()) == dimension_formula(n));
      CHECK(c.saturated == (n == 1));  // su(4) already at N = 1
    }
  }

  TEST_CASE("distinct couplings give the full special unitary algebra") {
    const std::vector<std::vector<double>> sets{{1.0}, {1.0, 1.5}, {1.0, 1.5, 2.2}};
    for (const auto& a : sets) {
      const int n = static_cast<int>(a.size());
      const LieClosure c = closure(SpinStarSystem(n, CouplingScheme::different(a)));
      CHECK(static_cast<std::int64_t>(c.dim()) == full_su_dimension(n));
      CHECK(c.saturated);
    }
  }

  TEST_CASE("numerical rank test agrees with the exact test for small N") {
    ClosureOptions numerical;
    numerical.rank_test = RankTest::numerical;
    for (int n = 0; n <= 3; ++n) {
      const LieClosure exact = equal_closure(n);
      const LieClosure approx = equal_closure(n, numerical);
      CHECK(exact.dim() == approx.dim());
      CHECK(exact.depth == approx.depth);
      CHECK(approx.exact_span == nullptr);
    }
  }

  TEST_CASE("basis is orthonormal and skew-Hermitian") {
    const LieClosure c = equal_closure(3);
    const auto& q = c.coordinates;
    const Eigen::MatrixXd gram = q.transpose() * q;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
              .cwiseAbs()
              .maxCoeff() <= 1e-9);
    for (const auto& b : c.basis) {
      CHECK(skew_hermiticity_defect(b) <= 1e-12);
      CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(c.independence.size() == c.dim());
  }

  TEST_CASE("depths are nondecreasing and level spans grow") {
    const LieClosure c = equal_closure(2);
    for (std::size_t i = 1; i < c.depth.size(); ++i) {
      CHECK(c.depth[i - 1] <= c.depth[i]);
    }
    CHECK(c.span_size_at_depth(0) == 2);
    CHECK(c.span_size_at_depth(c.max_depth()) == c.dim());
    for (int k = 1; k <= c.max_depth(); ++k) {
      CHECK(c.span_size_at_depth(k) > c.span_size_at_depth(k - 1));
    }
  }

  TEST_CASE("generator order does not change the algebra") {
    const SpinStarSystem sys(2, CouplingScheme::equal(1.0));
    auto gens = spin_star_generators(sys);
    std::swap(gens[0], gens[1]);
    const LieClosure swapped = closure(std::span<const DenseOperator>(gens));
    CHECK(swapped.dim() == 38);
  }

  TEST_CASE("central spin is controllable in both coupling regimes") {
    for (int n = 1; n <= 3; ++n) {
      const SpinStarSystem eq(n, CouplingScheme::equal(1.0));
      const SpinStarSystem diff(n, CouplingScheme::different(
                                       default_different_couplings(n)));
      for (const SpinStarSystem* sys : {&eq, &diff}) {
        const LieClosure c = closure(*sys);
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
          const Membership m = contains(c, kI * central_pauli(*sys, a));
          CHECK(m.contained);
          CHECK(m.exact);
          CHECK(m.residual <= 1e-8);
        }
      }
    }
  }

  TEST_CASE("single bath spins are reachable only for distinct couplings") {
    for (int n = 2; n <= 3; ++n) {
      const SpinStarSystem eq(n, CouplingScheme::equal(1.0));
      const SpinStarSystem diff(n, CouplingScheme::different(
                                       default_different_couplings(n)));
      const Membership in_eq =
          contains(closure(eq), kI * bath_pauli(eq, 1, Axis::x));
      const Membership in_diff =
          contains(closure(diff), kI * bath_pauli(diff, 1, Axis::x));
      CHECK_FALSE(in_eq.contained);
      CHECK(in_eq.residual > 0.1);
      CHECK(in_diff.contained);
      CHECK(in_diff.residual <= 1e-8);
    }
  }

  TEST_CASE("element depth") {
    const SpinStarSystem eq(2, CouplingScheme::equal(1.0));
    const LieClosure c = closure(eq);
    CHECK(element_depth(c, kI * control_hamiltonian(eq)) == 0);
    CHECK(element_depth(c, kI * central_pauli(eq, Axis::x)) == 7);
    CHECK_THROWS_AS(element_depth(c, kI * bath_pauli(eq, 1, Axis::x)),
                    NotContained);

    const SpinStarSystem diff(2, CouplingScheme::different({1.0, 1.5}));
    CHECK(element_depth(closure(diff), kI * central_pauli(diff, Axis::x)) == 9);

    // The floating-point path gives the same depths.
    LieClosure numerical = c;
    numerical.exact_span = nullptr;
    CHECK(element_depth(numerical, kI * central_pauli(eq, Axis::x)) == 7);
  }

  TEST_CASE("ladder basis elements lie in the equal-coupling algebra") {
    for (int n = 2; n <= 3; ++n) {
      const SpinStarSystem sys(n, CouplingScheme::equal(1.0));
      const LadderBasisReport r = verify_equal_coupling_basis(sys, closure(sys));
      CHECK(r.all_contained);
      CHECK(r.max_residual <= 1e-7);
      CHECK(r.checks.size() == 60);  // 3 axes x 20 triples with l+k+s <= 3
    }
    const SpinStarSystem diff(2, CouplingScheme::different({1.0, 1.5}));
    CHECK_THROWS_AS(verify_equal_coupling_basis(diff, closure(diff)),
                    ConfigError);
  }

  TEST_CASE("ladder element is skew-Hermitian") {
    const SpinStarSystem sys(3, CouplingScheme::equal(1.0));
    CHECK(skew_hermiticity_defect(ladder_element(sys, Axis::y, 2, 1, 1)) <=
          1e-12);
    CHECK(max_abs(ladder_element(sys, Axis::z, 0, 0, 0) -
                  2.0 * kI * central_pauli(sys, Axis::z)) == 0.0);
  }

  TEST_CASE("input validation") {
    std::vector<DenseOperator> not_skew{pauli::sigma_x()};
    CHECK_THROWS_AS(closure(std::span<const DenseOperator>(not_skew)),
                    StructureError);
    std::vector<DenseOperator> shapes{kI * pauli::sigma_x(),
                                      kI * kron(pauli::sigma_x(), pauli::sigma_x())};
    CHECK_THROWS_AS(closure(std::span<const DenseOperator>(shapes)),
                    DimensionMismatch);
    const LieClosure c = equal_closure(1);
    CHECK_THROWS_AS(contains(c, kI * pauli::sigma_x()), DimensionMismatch);
  }

  TEST_CASE("memory guard") {
    const SpinStarSystem big(7, CouplingScheme::different(
                                    default_different_couplings(7)));
    CHECK_THROWS_AS(check_closure_memory(big, std::uint64_t{1} << 30),
                    ResourceLimitError);
    ClosureOptions small;
    small.memory_limit_bytes = 1 << 20;
    CHECK_THROWS_AS(closure(big, small), ResourceLimitError);
    CHECK_NOTHROW(check_closure_memory(
        SpinStarSystem(2, CouplingScheme::equal(1.0)), std::uint64_t{1} << 30));
  }

  TEST_CASE("coupling genericity conditions") {
    const std::vector<double> ok{1.0, 1.5, 2.2};
    CHECK(coupling_assumptions_check(ok).pass());
    const std::vector<double> gaps{1.0, 2.0, 3.0};
    const auto g = coupling_assumptions_check(gaps);
    CHECK(g.distinct_magnitudes);
    CHECK_FALSE(g.distinct_gaps);
    const std::vector<double> arithmetic{1.0, 1.5, 2.0};
    CHECK_FALSE(coupling_assumptions_check(arithmetic).pass());
    const std::vector<double> mags{1.0, -1.0, 2.5};
    const auto m = coupling_assumptions_check(mags);
    CHECK_FALSE(m.distinct_magnitudes);
    CHECK_FALSE(m.violations.empty());
    for (int n = 1; n <= 8; ++n) {
      CHECK(coupling_assumptions_check(default_different_couplings(n)).pass());
    }
  }
}

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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "spinstar/errors.hpp"
#include "spinstar/modular.hpp"
#include "spinstar/operators.hpp"
#include "spinstar/spin_star.hpp"
#include "test_support.hpp"

using namespace spinstar;
using namespace spinstar::pauli;
using spinstar::testing::haar_unitary;
using spinstar::testing::random_hermitian;

namespace {

DenseOperator diag4(double a, double b, double c, double d) {
  DenseOperator m = DenseOperator::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("kron layout follows the slow index of the first factor") {
    CHECK(max_abs(kron(sigma_z(), identity(2)) - diag4(1, 1, -1, -1)) == 0.0);
    CHECK(max_abs(kron(identity(2), sigma_z()) - diag4(1, -1, 1, -1)) == 0.0);
    const DenseOperator xx = kron(sigma_x(), sigma_x());
    CHECK(max_abs(xx * xx - identity(4)) == 0.0);
  }

  TEST_CASE("commutator of Pauli matrices") {
    // [i sy, i sz] = -[sy, sz] = -2i sx
    DenseOperator expected(2, 2);
    expected << 0.0, -2.0 * kI, -2.0 * kI, 0.0;
    CHECK(max_abs(commutator(kI * sigma_y(), kI * sigma_z()) - expected) <
          1e-15);
    const DenseOperator a = kI * sigma_x() + 0.3 * kI * sigma_z();
    CHECK(max_abs(commutator(a, a)) == 0.0);
    CHECK_THROWS_AS(commutator(sigma_x(), identity(4)), DimensionMismatch);
  }

  TEST_CASE("drift and control of a lone spin do not commute") {
    // [i sy, i sz] = -2i sx is nonzero and proportional to sx.
    const DenseOperator c = commutator(kI * sigma_y(), kI * sigma_z());
    CHECK(std::abs(c(0, 1) - (-2.0 * kI)) < 1e-15);
    CHECK(std::abs(c(0, 0)) == 0.0);
  }

  TEST_CASE("commutator of skew-Hermitian inputs is skew-Hermitian") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
      const DenseOperator a = kI * random_hermitian(8, rng);
      const DenseOperator b = kI * random_hermitian(8, rng);
      CHECK(is_skew_hermitian(commutator(a, b), 1e-12));
    }
  }

  TEST_CASE("spectrum of a 4x4 Kronecker sum matches its characteristic polynomial") {
    // H = sz(x)sz + 0.5 sx(x)1 splits into blocks m sz + 0.5 sx, m = +-1, so
    // det(H - x) = (x^2 - 1.25)^2.
    const DenseOperator h =
        kron(sigma_z(), sigma_z()) + 0.5 * kron(sigma_x(), identity(2));
    const SpectralDecomposition s = eig_hermitian(h);
    const double r = std::sqrt(1.25);
    CHECK(s.eigenvalues(0) == doctest::Approx(-r).epsilon(1e-14));
    CHECK(s.eigenvalues(1) == doctest::Approx(-r).epsilon(1e-14));
    CHECK(s.eigenvalues(2) == doctest::Approx(r).epsilon(1e-14));
    CHECK(s.eigenvalues(3) == doctest::Approx(r).epsilon(1e-14));
  }

  TEST_CASE("eigendecomposition reconstructs and is ascending") {
    std::mt19937_64 rng(1);
    for (Index d : {2, 4, 16, 64}) {
      const DenseOperator h = random_hermitian(d, rng);
      const SpectralDecomposition s = eig_hermitian(h);
      CHECK(max_abs(s.reconstruct() - h) <= 1e-10);
      CHECK(is_unitary(s.eigenvectors));
      for (Index i = 1; i < d; ++i) {
        CHECK(s.eigenvalues(i - 1) <= s.eigenvalues(i));
      }
    }
    DenseOperator bad = sigma_x();
    bad(0, 1) = 2.0;
    CHECK_THROWS_AS(eig_hermitian(bad), StructureError);
  }

  TEST_CASE("matrix exponential of a Pauli rotation") {
    const double theta = 0.7;
    const double t = 1.3;
    const DenseOperator u = expm_unitary(theta * sigma_x(), t);
    const DenseOperator expected = std::cos(theta * t) * identity(2) -
                                   kI * std::sin(theta * t) * sigma_x();
    CHECK(max_abs(u - expected) < 1e-14);
  }

  TEST_CASE("trace norm and polar decomposition") {
    DenseOperator q = DenseOperator::Zero(2, 2);
    q(0, 0) = 3.0;
    q(1, 1) = -4.0;
    CHECK(trace_norm(q) == doctest::Approx(7.0));

    std::mt19937_64 rng(2);
    const DenseOperator v = haar_unitary(8, rng);
    const PolarDecomposition pv = polar(v);
    CHECK(pv.trace_norm == doctest::Approx(8.0));
    CHECK(max_abs(pv.unitary - v) < 1e-12);

    const DenseOperator g = spinstar::testing::random_complex(6, rng);
    const PolarDecomposition pg = polar(g);
    CHECK(is_unitary(pg.unitary));
    const DenseOperator p = pg.unitary.adjoint() * g;
    CHECK(is_hermitian(p, 1e-10));
    CHECK(eig_hermitian(0.5 * (p + p.adjoint())).eigenvalues.minCoeff() >
          -1e-10);
    CHECK(pg.trace_norm == doctest::Approx(p.trace().real()));

    // Rank-deficient input still yields a unitary factor.
    const DenseOperator singular = kron(sigma_plus(), identity(2));
    CHECK(is_unitary(polar_unitary(singular)));
  }

  TEST_CASE("partial trace over the leading factor") {
    std::mt19937_64 rng(3);
    const DenseOperator a = spinstar::testing::random_complex(2, rng);
    const DenseOperator b = spinstar::testing::random_complex(4, rng);
    const DenseOperator reduced = partial_trace_leading(kron(a, b), 2);
    CHECK(max_abs(reduced - a.trace() * b) < 1e-12);
  }

  TEST_CASE("Hilbert-Schmidt inner product") {
    const Complex ip = hs_inner(kI * sigma_x(), kI * sigma_x());
    CHECK(ip.real() == doctest::Approx(2.0));
    CHECK(std::abs(hs_inner(sigma_x(), sigma_y())) == 0.0);
  }
}

TEST_SUITE("modular") {
  TEST_CASE("doubles map to their exact rationals") {
    using namespace modular;
    const Gaussian half{from_double(0.5), 0};
    const Gaussian two{from_double(2.0), 0};
    CHECK(mul(half, two) == Gaussian{1, 0});
    CHECK(from_double(-1.0) == kPrime - 1);
    CHECK(from_double(0.0) == 0);
    // 0.1 is a dyadic rational m 2^-e, so 10 * 0.1 is not 1 exactly.
    const Gaussian tenth{from_double(0.1), 0};
    const Gaussian ten{from_double(10.0), 0};
    CHECK_FALSE(mul(tenth, ten) == Gaussian{1, 0});
    const Gaussian x{12345, 678};
    CHECK(mul(x, inverse(x)) == Gaussian{1, 0});
    const Gaussian i{0, 1};
    CHECK(mul(i, i) == Gaussian{kPrime - 1, 0});
  }

  TEST_CASE("exact commutators agree with floating-point ones on integer matrices") {
    using namespace modular;
    const DenseOperator a = kI * kron(sigma_x(), sigma_y());
    const DenseOperator b = kI * kron(sigma_z(), identity(2)) +
                            2.0 * kI * kron(sigma_y(), sigma_y());
    const Matrix exact = commutator(Matrix::from_dense(a), Matrix::from_dense(b));
    const Matrix mapped = Matrix::from_dense(spinstar::commutator(a, b));
    CHECK(exact.entries() == mapped.entries());
  }

  TEST_CASE("echelon tracks rank and prefix spans") {
    using namespace modular;
    Echelon e(4);
    const Matrix x = Matrix::from_dense(kI * sigma_x());
    const Matrix y = Matrix::from_dense(kI * sigma_y());
    const Matrix z = Matrix::from_dense(kI * sigma_z());
    const Matrix combo =
        Matrix::from_dense(kI * sigma_x() + 3.0 * kI * sigma_y());
    CHECK(e.insert(x));
    CHECK(e.insert(y));
    CHECK_FALSE(e.insert(combo));
    CHECK(e.rank() == 2);
    CHECK(e.in_span(combo));
    CHECK_FALSE(e.in_span(combo, 1));
    CHECK_FALSE(e.in_span(z));
    CHECK(e.insert(z));
    CHECK(e.rank() == 3);
  }
}

TEST_SUITE("spin-star") {
  TEST_CASE("lone central spin") {
    const SpinStarSystem sys(0, CouplingScheme::equal(1.0));
    CHECK(sys.dim() == 2);
    CHECK(max_abs(drift_hamiltonian(sys) - sigma_y()) == 0.0);
    CHECK(max_abs(control_hamiltonian(sys) - sigma_z()) == 0.0);
  }

  TEST_CASE("drift of one bath spin written out") {
    const SpinStarSystem sys(1, CouplingScheme::equal(0.7));
    const DenseOperator expected =
        kron(sigma_y(), identity(2)) +
        0.7 * (kron(sigma_x(), sigma_x()) + kron(sigma_y(), sigma_y()) +
               kron(sigma_z(), sigma_z()));
    CHECK(max_abs(drift_hamiltonian(sys) - expected) < 1e-15);
  }

  TEST_CASE("Hamiltonians are Hermitian") {
    for (int n = 0; n <= 4; ++n) {
      const SpinStarSystem sys(n, CouplingScheme::random_uniform(1, 2, 9));
      CHECK(hermiticity_defect(drift_hamiltonian(sys)) <= 1e-12);
      CHECK(hermiticity_defect(control_hamiltonian(sys)) == 0.0);
    }
  }

  TEST_CASE("collective form equals the site form for equal couplings") {
    for (int n = 1; n <= 5; ++n) {
      const SpinStarSystem sys(n, CouplingScheme::equal(1.0));
      CHECK(max_abs(collective_form(sys) - drift_hamiltonian(sys)) <= 1e-12);
    }
    const SpinStarSystem scaled(2, CouplingScheme::equal(0.5, true));
    CHECK(max_abs(collective_form(scaled) - drift_hamiltonian(scaled)) <=
          1e-12);
    const SpinStarSystem diff(2, CouplingScheme::different({1.0, 1.5}));
    CHECK_THROWS_AS(collective_form(diff), ConfigError);
  }

  TEST_CASE("equal couplings conserve the total bath spin") {
    for (int n = 1; n <= 4; ++n) {
      const SpinStarSystem sys(n, CouplingScheme::equal(1.0));
      const DenseOperator j2 = bath_j_squared(sys);
      CHECK(max_abs(commutator(drift_hamiltonian(sys), j2)) <= 1e-12);
      CHECK(max_abs(commutator(control_hamiltonian(sys), j2)) <= 1e-12);
    }
    const SpinStarSystem diff(2, CouplingScheme::different({1.0, 1.5}));
    CHECK(max_abs(commutator(drift_hamiltonian(diff), bath_j_squared(diff))) >
          0.1);
  }

  TEST_CASE("bath angular momentum obeys su(2)") {
    const SpinStarSystem sys(3, CouplingScheme::equal(1.0));
    const DenseOperator jx = bath_angular_momentum(sys, Axis::x);
    const DenseOperator jy = bath_angular_momentum(sys, Axis::y);
    const DenseOperator jz = bath_angular_momentum(sys, Axis::z);
    CHECK(max_abs(commutator(jx, jy) - kI * jz) < 1e-13);
    CHECK(max_abs(bath_j_plus(sys) - bath_j_minus(sys).adjoint()) == 0.0);
    CHECK(max_abs(bath_j_squared(sys) - (jx * jx + jy * jy + jz * jz)) < 1e-13);
  }

  TEST_CASE("J^2 spectrum matches the angular-momentum addition count") {
    // N spin-1/2: multiplicity of j is C(N, N/2 - j) - C(N, N/2 - j - 1).
    for (int n = 1; n <= 5; ++n) {
      const SpinStarSystem sys(n, CouplingScheme::equal(1.0));
      const RealVector ev = eig_hermitian(bath_j_squared(sys)).eigenvalues;
      auto binom = [](int a, int b) {
        if (b < 0 || b > a) return 0.0;
        return std::round(std::tgamma(a + 1.0) /
                          (std::tgamma(b + 1.0) * std::tgamma(a - b + 1.0)));
      };
      for (int twice_j = n % 2; twice_j <= n; twice_j += 2) {
        const double j = 0.5 * twice_j;
        const int k = (n - twice_j) / 2;
        const double copies = binom(n, k) - binom(n, k - 1);
        // each copy appears (2j+1) times per bath state, times 2 for the
        // central spin
        const double expected = 2.0 * copies * (twice_j + 1);
        int count = 0;
        for (Index i = 0; i < ev.size(); ++i) {
          if (std::abs(ev(i) - j * (j + 1.0)) < 1e-9) ++count;
        }
        CHECK(count == doctest::Approx(expected));
      }
    }
  }

  TEST_CASE("Heisenberg coupling is isotropic") {
    std::mt19937_64 rng(5);
    const DenseOperator r = haar_unitary(2, rng);
    for (int n = 1; n <= 3; ++n) {
      const SpinStarSystem sys(n, CouplingScheme::random_uniform(1, 2, 3));
      const DenseOperator coupling =
          drift_hamiltonian(sys) - central_pauli(sys, Axis::y);
      DenseOperator rot = r;
      for (int k = 0; k < n; ++k) rot = kron(rot, r);
      CHECK(max_abs(rot * coupling * rot.adjoint() - coupling) <= 1e-10);
    }
  }

  TEST_CASE("coupling schemes resolve and validate") {
    const SpinStarSystem eq(4, CouplingScheme::equal(1.0, true));
    for (double a : eq.couplings()) CHECK(a == doctest::Approx(0.5));
    CHECK(eq.has_equal_couplings());

    const SpinStarSystem r1(3, CouplingScheme::random_uniform(1, 2, 42));
    const SpinStarSystem r2(3, CouplingScheme::random_uniform(1, 2, 42));
    CHECK(r1.couplings() == r2.couplings());
    for (double a : r1.couplings()) {
      CHECK(a >= 1.0);
      CHECK(a <= 2.0);
    }
    const SpinStarSystem rs(4, CouplingScheme::random_uniform(1, 2, 42, true));
    const SpinStarSystem ru(4, CouplingScheme::random_uniform(1, 2, 42));
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(rs.couplings()[k] == doctest::Approx(ru.couplings()[k] / 2.0));
    }

    CHECK_THROWS_AS(SpinStarSystem(2, CouplingScheme::different({1.0})),
                    ConfigError);
    CHECK_THROWS_AS(SpinStarSystem(-1, CouplingScheme::equal(1.0)),
                    ConfigError);
    CHECK_THROWS_AS(SpinStarSystem(20, CouplingScheme::equal(1.0)),
                    ResourceLimitError);
  }

  TEST_CASE("default generic couplings") {
    const auto a = default_different_couplings(5);
    REQUIRE(a.size() == 5);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == 1.5);
    CHECK(a[2] == 2.5);
    CHECK(a[3] == 4.5);
    CHECK(a[4] == 7.0);
    CHECK(default_different_couplings(0).empty());
  }
}

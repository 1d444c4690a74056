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
#include <string>
#include <vector>

#include "spinstar/operators.hpp"

namespace spinstar {

enum class CouplingKind { equal, different, random_uniform };

std::string to_string(CouplingKind kind);
CouplingKind coupling_kind_from_string(const std::string& name);

/// How the central-bath couplings A_k are chosen.
struct CouplingScheme {
  CouplingKind kind = CouplingKind::equal;
  double value = 1.0;          // equal
  std::vector<double> values;  // different, one per bath spin
  double lo = 1.0;             // random_uniform
  double hi = 2.0;
  std::uint64_t seed = 0;
  bool rescale = false;  // divide every A_k by sqrt(N)

  static CouplingScheme equal(double a, bool rescale = false);
  static CouplingScheme different(std::vector<double> a, bool rescale = false);
  static CouplingScheme random_uniform(double lo, double hi, std::uint64_t seed,
                                       bool rescale = false);
};

/// Generic couplings for N bath spins, A_k = 1 + (m_k - 1)/2 with m the
/// Mian-Chowla sequence 1, 2, 4, 8, 13, ... whose pairwise differences are all
/// distinct: 1, 1.5, 2.5, 4.5, 7, ... Magnitudes and gaps are all distinct.
std::vector<double> default_different_couplings(int n_bath);

/// A central spin-1/2 (tensor factor 0) coupled to N bath spins (factors 1..N)
/// through isotropic Heisenberg terms.
class SpinStarSystem {
 public:
  SpinStarSystem(int n_bath, CouplingScheme scheme);

  int n_bath() const { return n_bath_; }
  Index dim() const { return Index{1} << (n_bath_ + 1); }
  Index bath_dim() const { return Index{1} << n_bath_; }
  const CouplingScheme& scheme() const { return scheme_; }
  /// Couplings after sampling and rescaling; these enter the Hamiltonian.
  const std::vector<double>& couplings() const { return couplings_; }
  /// True when all resolved couplings are identical (J^2 is conserved).
  bool has_equal_couplings() const;

 private:
  int n_bath_;
  CouplingScheme scheme_;
  std::vector<double> couplings_;
};

/// Single-site operator placed at `site` (0 = central) among `n_sites` spins.
DenseOperator embed(const DenseOperator& single, int site, int n_sites);

/// sigma_axis on the central spin, identity on the bath.
DenseOperator central_pauli(const SpinStarSystem& sys, Axis axis);
/// sigma_axis on bath spin k (1-based), identity elsewhere.
DenseOperator bath_pauli(const SpinStarSystem& sys, int k, Axis axis);

/// H0 = sigma_y + sum_k A_k sigma . sigma^(k).
DenseOperator drift_hamiltonian(const SpinStarSystem& sys);

/// The same H0 written with ladder operators,
/// i(s- - s+) + 2A(s- J+ + s+ J- + s_z J_z). Equal couplings only.
DenseOperator collective_form(const SpinStarSystem& sys);

/// Unit-amplitude control direction sigma_z (x) 1_bath.
DenseOperator control_hamiltonian(const SpinStarSystem& sys);

/// 1 (x) J_axis with J = (1/2) sum_k sigma^(k). Requires N >= 1.
DenseOperator bath_angular_momentum(const SpinStarSystem& sys, Axis axis);
/// 1 (x) J_+ and 1 (x) J_-.
DenseOperator bath_j_plus(const SpinStarSystem& sys);
DenseOperator bath_j_minus(const SpinStarSystem& sys);
/// 1 (x) J^2.
DenseOperator bath_j_squared(const SpinStarSystem& sys);

}  // namespace spinstar

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

#include "spinstar/spin_star.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "spinstar/errors.hpp"

namespace spinstar {

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::equal:
      return "equal";
    case CouplingKind::different:
      return "different";
    case CouplingKind::random_uniform:
      return "random_uniform";
  }
  return "equal";
}

CouplingKind coupling_kind_from_string(const std::string& name) {
  if (name == "equal") return CouplingKind::equal;
  if (name == "different") return CouplingKind::different;
  if (name == "random_uniform" || name == "random") {
    return CouplingKind::random_uniform;
  }
  throw ConfigError("unknown coupling scheme '" + name + "'");
}

CouplingScheme CouplingScheme::equal(double a, bool rescale) {
  CouplingScheme s;
  s.kind = CouplingKind::equal;
  s.value = a;
  s.rescale = rescale;
  return s;
}

CouplingScheme CouplingScheme::different(std::vector<double> a, bool rescale) {
  CouplingScheme s;
  s.kind = CouplingKind::different;
  s.values = std::move(a);
  s.rescale = rescale;
  return s;
}

CouplingScheme CouplingScheme::random_uniform(double lo, double hi,
                                              std::uint64_t seed,
                                              bool rescale) {
  CouplingScheme s;
  s.kind = CouplingKind::random_uniform;
  s.lo = lo;
  s.hi = hi;
  s.seed = seed;
  s.rescale = rescale;
  return s;
}

std::vector<double> default_different_couplings(int n_bath) {
  if (n_bath < 0) throw ConfigError("n_bath must be nonnegative");
  // Greedy Sidon sequence: next term is the smallest value keeping every
  // pairwise difference distinct.
  std::vector<int> terms;
  std::vector<bool> used_diff;
  for (int candidate = 1; static_cast<int>(terms.size()) < n_bath; ++candidate) {
    bool ok = true;
    for (int t : terms) {
      const auto diff = static_cast<std::size_t>(candidate - t);
      if (diff < used_diff.size() && used_diff[diff]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int t : terms) {
      const auto diff = static_cast<std::size_t>(candidate - t);
      if (diff >= used_diff.size()) used_diff.resize(diff + 1, false);
      used_diff[diff] = true;
    }
    terms.push_back(candidate);
  }
  std::vector<double> out;
  for (int m : terms) out.push_back(1.0 + 0.5 * (m - 1));
  return out;
}

SpinStarSystem::SpinStarSystem(int n_bath, CouplingScheme scheme)
    : n_bath_(n_bath), scheme_(std::move(scheme)) {
  if (n_bath_ < 0) throw ConfigError("n_bath must be nonnegative");
  if (n_bath_ > 14) throw ResourceLimitError("n_bath above 14 is not supported");
  const auto n = static_cast<std::size_t>(n_bath_);
  switch (scheme_.kind) {
    case CouplingKind::equal:
      couplings_.assign(n, scheme_.value);
      break;
    case CouplingKind::different:
      if (scheme_.values.size() != n) {
        throw ConfigError("different couplings: expected " + std::to_string(n) +
                          " values, got " +
                          std::to_string(scheme_.values.size()));
      }
      couplings_ = scheme_.values;
      break;
    case CouplingKind::random_uniform: {
      if (!(scheme_.lo <= scheme_.hi)) {
        throw ConfigError("random couplings: lo must not exceed hi");
      }
      std::mt19937_64 rng(scheme_.seed);
      std::uniform_real_distribution<double> dist(scheme_.lo, scheme_.hi);
      couplings_.resize(n);
      for (auto& a : couplings_) a = dist(rng);
      break;
    }
  }
  if (scheme_.rescale && n_bath_ > 0) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_bath_));
    for (auto& a : couplings_) a *= scale;
  }
  for (double a : couplings_) {
    if (!std::isfinite(a)) throw ConfigError("coupling constants must be finite");
  }
}

bool SpinStarSystem::has_equal_couplings() const {
  return std::all_of(couplings_.begin(), couplings_.end(),
                     [&](double a) { return a == couplings_.front(); });
}

DenseOperator embed(const DenseOperator& single, int site, int n_sites) {
  if (site < 0 || site >= n_sites) {
    throw std::out_of_range("embed: site " + std::to_string(site) +
                            " outside [0, " + std::to_string(n_sites) + ")");
  }
  const Index d = single.rows();
  Index left = 1;
  for (int s = 0; s < site; ++s) left *= d;
  Index right = 1;
  for (int s = site + 1; s < n_sites; ++s) right *= d;
  return kron(kron(pauli::identity(left), single), pauli::identity(right));
}

DenseOperator central_pauli(const SpinStarSystem& sys, Axis axis) {
  return embed(pauli::sigma(axis), 0, sys.n_bath() + 1);
}

DenseOperator bath_pauli(const SpinStarSystem& sys, int k, Axis axis) {
  if (k < 1 || k > sys.n_bath()) {
    throw std::out_of_range("bath_pauli: bath index " + std::to_string(k) +
                            " outside [1, " + std::to_string(sys.n_bath()) +
                            "]");
  }
  return embed(pauli::sigma(axis), k, sys.n_bath() + 1);
}

DenseOperator drift_hamiltonian(const SpinStarSystem& sys) {
  DenseOperator h = central_pauli(sys, Axis::y);
  const auto& a = sys.couplings();
  for (int k = 1; k <= sys.n_bath(); ++k) {
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
      h.noalias() += a[static_cast<std::size_t>(k - 1)] *
                     (central_pauli(sys, axis) * bath_pauli(sys, k, axis));
    }
  }
  return h;
}

DenseOperator bath_angular_momentum(const SpinStarSystem& sys, Axis axis) {
  if (sys.n_bath() < 1) {
    throw ConfigError("bath angular momentum requires at least one bath spin");
  }
  DenseOperator j = DenseOperator::Zero(sys.dim(), sys.dim());
  for (int k = 1; k <= sys.n_bath(); ++k) j += bath_pauli(sys, k, axis);
  return 0.5 * j;
}

DenseOperator bath_j_plus(const SpinStarSystem& sys) {
  return bath_angular_momentum(sys, Axis::x) +
         kI * bath_angular_momentum(sys, Axis::y);
}

DenseOperator bath_j_minus(const SpinStarSystem& sys) {
  return bath_angular_momentum(sys, Axis::x) -
         kI * bath_angular_momentum(sys, Axis::y);
}

DenseOperator bath_j_squared(const SpinStarSystem& sys) {
  DenseOperator out = DenseOperator::Zero(sys.dim(), sys.dim());
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    const DenseOperator j = bath_angular_momentum(sys, axis);
    out.noalias() += j * j;
  }
  return out;
}

DenseOperator collective_form(const SpinStarSystem& sys) {
  if (!sys.has_equal_couplings()) {
    throw ConfigError("collective form requires equal couplings");
  }
  const int sites = sys.n_bath() + 1;
  const DenseOperator s_minus = embed(pauli::sigma_minus(), 0, sites);
  const DenseOperator s_plus = embed(pauli::sigma_plus(), 0, sites);
  DenseOperator h = kI * (s_minus - s_plus);
  if (sys.n_bath() == 0) return h;
  const double a = sys.couplings().front();
  const DenseOperator s_z = central_pauli(sys, Axis::z);
  h += 2.0 * a *
       (s_minus * bath_j_plus(sys) + s_plus * bath_j_minus(sys) +
        s_z * bath_angular_momentum(sys, Axis::z));
  return h;
}

DenseOperator control_hamiltonian(const SpinStarSystem& sys) {
  return central_pauli(sys, Axis::z);
}

}  // namespace spinstar

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

#include "spinstar/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "spinstar/errors.hpp"

namespace spinstar {

std::string to_string(FidelityKind kind) {
  return kind == FidelityKind::f1 ? "f1" : "f2";
}

FidelityKind fidelity_kind_from_string(const std::string& name) {
  if (name == "f1") return FidelityKind::f1;
  if (name == "f2") return FidelityKind::f2;
  throw ConfigError("unknown fidelity '" + name + "' (expected f1 or f2)");
}

double fidelity_f1(const DenseOperator& u, const DenseOperator& target_full) {
  const Complex overlap = hs_inner(target_full, u);
  const double d = static_cast<double>(u.rows());
  return std::min(1.0, std::norm(overlap) / (d * d));
}

DenseOperator central_overlap(const DenseOperator& u,
                              const DenseOperator& target_central) {
  if (target_central.rows() != 2 || target_central.cols() != 2) {
    throw DimensionMismatch("central target must be 2x2");
  }
  if (u.rows() != u.cols() || u.rows() % 2 != 0) {
    throw DimensionMismatch("propagator must be square with even dimension");
  }
  // tr_S[(G (x) 1)^dagger U] = sum_{a,b} conj(G_ba) U_ba, U_ba the bath block.
  const Index rest = u.rows() / 2;
  DenseOperator q = DenseOperator::Zero(rest, rest);
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) {
      q += std::conj(target_central(b, a)) *
           u.block(b * rest, a * rest, rest, rest);
    }
  }
  return q;
}

double fidelity_f2(const DenseOperator& u, const DenseOperator& target_central,
                   int n_bath) {
  if (u.rows() != (Index{2} << n_bath)) {
    throw DimensionMismatch("propagator dimension does not match n_bath");
  }
  const double d = static_cast<double>(u.rows());
  return std::min(1.0, trace_norm(central_overlap(u, target_central)) / d);
}

}  // namespace spinstar

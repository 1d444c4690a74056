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

#include <string>
#include <vector>

#include "spinstar/grape.hpp"
#include "spinstar/lie_closure.hpp"
#include "spinstar/spin_star.hpp"

namespace spinstar {

// JSON reports written by the command-line tool. Each function returns a
// pretty-printed JSON document.

/// Closure dimension against the expected value: the equal-coupling formula
/// (formula = "equal_coupling") or 4^(N+1)-1 (formula = "full_su").
std::string lie_dim_report(const SpinStarSystem& sys, const LieClosure& closure,
                           double elapsed_ms);

struct MembershipQuery {
  std::string label;
  DenseOperator element;
};

/// i sigma_a (x) 1 for a = x, y, z, then i sigma_a on every bath spin.
std::vector<MembershipQuery> standard_membership_queries(
    const SpinStarSystem& sys);

std::string membership_report(const SpinStarSystem& sys,
                              const LieClosure& closure,
                              const std::vector<MembershipQuery>& queries);

std::string ladder_basis_report(const SpinStarSystem& sys,
                              const LadderBasisReport& report);

std::string coupling_report(const std::vector<double>& couplings,
                            const CouplingAssumptions& check);

std::string optimization_report(const SpinStarSystem& sys,
                                const TargetGate& target,
                                const GrapeConfig& config,
                                const OptimizationRun& run);

}  // namespace spinstar

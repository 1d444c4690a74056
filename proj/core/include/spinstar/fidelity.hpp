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

#include "spinstar/operators.hpp"

namespace spinstar {

enum class FidelityKind { f1, f2 };

std::string to_string(FidelityKind kind);
FidelityKind fidelity_kind_from_string(const std::string& name);

/// |tr(target^dagger u) / d|^2: overlap with a full-system target, insensitive
/// to global phase.
double fidelity_f1(const DenseOperator& u, const DenseOperator& target_full);

/// Q = tr_S[(target_central (x) 1)^dagger u], the bath operator left after
/// tracing out the central spin.
DenseOperator central_overlap(const DenseOperator& u,
                              const DenseOperator& target_central);

/// ||Q||_1 / d: gate fidelity on the central spin alone, maximised over bath
/// unitaries. Equals 1 iff u = target_central (x) V for some unitary V.
double fidelity_f2(const DenseOperator& u, const DenseOperator& target_central,
                   int n_bath);

}  // namespace spinstar

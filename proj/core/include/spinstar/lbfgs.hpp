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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinstar/operators.hpp"

namespace spinstar {

struct LbfgsOptions {
  int max_iterations = 2000;
  /// Stop when the (projected) gradient infinity-norm falls below this.
  double gradient_tolerance = 1e-9;
  int history = 10;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
  /// Box constraint |x_i| <= bound, enforced by projection.
  std::optional<double> bound;
  /// Stop as soon as the objective reaches this value.
  std::optional<double> value_target;
};

enum class StopReason {
  gradient_tolerance,
  max_iterations,
  line_search_failed,
  value_target,
};

std::string to_string(StopReason reason);

struct IterationRecord {
  int iteration = 0;
  double value = 0.0;
  double gradient_norm = 0.0;
};

struct LbfgsResult {
  RealVector x;
  double initial_value = 0.0;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  StopReason reason = StopReason::max_iterations;
  std::vector<IterationRecord> trace;
};

/// Returns f(x) and writes the gradient into `gradient`.
using Objective = std::function<double(const RealVector& x, RealVector& gradient)>;

/// Limited-memory BFGS ascent with a projected backtracking (Armijo) line
/// search. Accepted steps never decrease the objective.
LbfgsResult maximize(const Objective& objective, RealVector x0,
                     const LbfgsOptions& options = {},
                     bool record_trace = false);

}  // namespace spinstar

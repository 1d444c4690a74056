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
#include <optional>
#include <vector>

#include "spinstar/fidelity.hpp"
#include "spinstar/lbfgs.hpp"
#include "spinstar/operators.hpp"
#include "spinstar/pulse.hpp"
#include "spinstar/spin_star.hpp"

namespace spinstar {

/// Drift and unit control direction of a spin star, built once and shared
/// read-only between restarts.
class ControlProblem {
 public:
  explicit ControlProblem(const SpinStarSystem& sys);

  int n_bath() const { return n_bath_; }
  Index dim() const { return drift_.rows(); }
  const DenseOperator& drift() const { return drift_; }
  const DenseOperator& control() const { return control_; }

 private:
  int n_bath_;
  DenseOperator drift_;
  DenseOperator control_;
};

struct Propagation {
  /// Spectral data of H0 + B_m Hc for every slice.
  std::vector<SpectralDecomposition> spectra;
  /// exp(-i (H0 + B_m Hc) dt) for every slice.
  std::vector<DenseOperator> slices;
  /// U(tau) = slices[M-1] ... slices[0].
  DenseOperator total;
};

/// Piecewise-constant evolution. Requires at least one slice.
Propagation propagate(const ControlProblem& problem, const PulseSequence& pulse);
Propagation propagate(const SpinStarSystem& sys, const PulseSequence& pulse);

struct FidelityGradient {
  double value = 0.0;
  RealVector gradient;  // d value / d B_m
  /// Eigenvalue pairs closer than the degeneracy gap, where the divided
  /// difference was replaced by its limit.
  std::size_t degenerate_pairs = 0;
};

FidelityGradient gradient_f1(const ControlProblem& problem,
                             const PulseSequence& pulse,
                             const DenseOperator& target_full);
FidelityGradient gradient_f2(const ControlProblem& problem,
                             const PulseSequence& pulse,
                             const DenseOperator& target_central);

/// Fidelity of `kind` for `target` with its exact gradient.
FidelityGradient evaluate(const ControlProblem& problem,
                          const PulseSequence& pulse, const TargetGate& target,
                          FidelityKind kind);

/// Fidelity of `kind` evaluated on a given propagator.
double fidelity(const DenseOperator& u, const TargetGate& target,
                FidelityKind kind, int n_bath);

struct GrapeConfig {
  FidelityKind fidelity = FidelityKind::f1;
  double dt = 0.05;
  int restarts = 20;
  std::uint64_t seed = 0;
  /// Initial amplitudes are uniform in [-initial_scale, initial_scale].
  double initial_scale = 1.0;
  LbfgsOptions optimizer{};
  int threads = 1;
  bool record_trace = false;
};

struct RestartRecord {
  std::uint64_t seed = 0;
  double initial_fidelity = 0.0;
  double final_fidelity = 0.0;
  int iterations = 0;
  StopReason reason = StopReason::max_iterations;
  std::vector<IterationRecord> trace;  // filled when record_trace is set
};

struct OptimizationRun {
  double tau = 0.0;
  double best_fidelity = 0.0;
  PulseSequence best_pulse;
  std::size_t best_restart = 0;
  std::vector<RestartRecord> restarts;

  double mean_fidelity() const;
};

/// Multi-start GRAPE at fixed driving time. tau must be a nonnegative multiple
/// of dt; tau = 0 evaluates the fidelity of the identity.
OptimizationRun optimize(const ControlProblem& problem, const TargetGate& target,
                         double tau, const GrapeConfig& config);
OptimizationRun optimize(const SpinStarSystem& sys, const TargetGate& target,
                         double tau, const GrapeConfig& config);

/// Uniform random amplitudes; the generator is seeded with `seed`.
PulseSequence random_pulse(std::size_t slices, double dt, double scale,
                           std::uint64_t seed);

}  // namespace spinstar

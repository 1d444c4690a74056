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
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinstar/fidelity.hpp"
#include "spinstar/lbfgs.hpp"
#include "spinstar/pulse.hpp"
#include "spinstar/spin_star.hpp"

namespace spinstar {

/// Driving times start, start + step, ..., up to stop inclusive.
struct TauGrid {
  double start = 0.5;
  double stop = 5.0;
  double step = 0.5;

  /// Grid points; each must be an integer multiple of dt.
  std::vector<double> values(double dt) const;
};

struct SweepConfig {
  std::vector<int> n_bath{0};
  /// For `different` couplings the first N values are used at each N; with no
  /// values the generic default set is used.
  CouplingScheme coupling{};
  TargetGate target = TargetGate::hadamard();
  FidelityKind fidelity = FidelityKind::f1;
  TauGrid tau{};
  /// Replaces `tau` for the listed N, for searching a known time window.
  std::map<int, TauGrid> tau_windows;
  int restarts = 200;
  double threshold = 0.995;
  double dt = 0.05;
  LbfgsOptions optimizer{};
  double initial_scale = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Largest Hilbert dimension 2^(N+1) the sweep may touch.
  std::int64_t dim_cap = 256;
  /// Writes measured wall times into the CSV; off gives byte-identical files
  /// for identical configurations.
  bool record_wall_time = true;
  /// Stop a cell's remaining grid once the threshold has been crossed.
  bool stop_at_threshold = false;

  /// Throws ConfigError on invalid fields and ResourceLimitError when an N
  /// exceeds the dimension cap.
  void validate() const;
  const TauGrid& grid_for(int n_bath) const;
  /// Coupling scheme resolved for a concrete N.
  CouplingScheme coupling_for(int n_bath) const;
};

struct SweepCell {
  int n_bath = 0;
  double tau = 0.0;
  int restarts = 0;
  double best_fidelity = 0.0;
  double mean_fidelity = 0.0;
  std::size_t best_restart = 0;
  double wall_ms = 0.0;
  std::vector<double> restart_fidelities;
  PulseSequence best_pulse;
};

struct SweepResult {
  FidelityKind fidelity = FidelityKind::f1;
  std::string scheme;
  std::uint64_t seed = 0;
  double threshold = 0.995;
  /// Ordered by N (config order) then tau.
  std::vector<SweepCell> cells;
  /// Per N: smallest grid tau reaching the threshold, or nullopt.
  std::map<int, std::optional<double>> t_star;

  /// (tau, best fidelity) pairs for one N.
  std::vector<std::pair<double, double>> curve(int n_bath) const;
};

/// Smallest grid tau whose fidelity reaches `threshold`, or nullopt.
/// Throws ConfigError on an empty curve.
std::optional<double> estimate_tstar(
    const std::vector<std::pair<double, double>>& curve, double threshold);

/// Seed of restart `r` in the cell of N-index `n_index` and tau-index
/// `tau_index`; independent of scheduling and of the restart count.
std::uint64_t cell_seed(std::uint64_t master, std::size_t n_index,
                        std::size_t tau_index);

/// Runs every (N, tau) cell. Restarts of a cell run on `threads` workers and
/// are reduced in restart order. `progress`, if set, is called after each cell.
SweepResult run_sweep(const SweepConfig& config,
                      const std::function<void(const SweepCell&)>& progress = {});

/// Header: n_bath,tau,restarts,best_fidelity,mean_fidelity,fidelity_kind,
/// scheme,seed,wall_ms.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
/// JSON object {"<N>": T_star or null, ...} plus run metadata.
std::string sweep_summary_json(const SweepResult& result);

}  // namespace spinstar

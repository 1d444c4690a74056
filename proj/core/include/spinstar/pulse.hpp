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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spinstar/operators.hpp"

namespace spinstar {

/// Piecewise-constant control amplitude B(t): amplitudes[m] holds on
/// [m*dt, (m+1)*dt).
struct PulseSequence {
  double dt = 0.05;
  std::vector<double> amplitudes;

  std::size_t slices() const { return amplitudes.size(); }
  double tau() const { return dt * static_cast<double>(amplitudes.size()); }

  /// Throws ConfigError on dt <= 0, non-finite amplitudes, or amplitudes
  /// outside [-bound, bound].
  void validate(std::optional<double> bound = std::nullopt) const;
};

/// Number of slices covering `tau`; ConfigError unless tau is a nonnegative
/// integer multiple of dt.
std::size_t slice_count(double tau, double dt);

/// CSV with header `slice_index,amplitude`. dt is carried in a leading
/// `# dt=<value>` comment line.
void write_pulse_csv(std::ostream& out, const PulseSequence& pulse);
PulseSequence read_pulse_csv(std::istream& in, double default_dt = 0.05);

std::string pulse_to_json(const PulseSequence& pulse);
PulseSequence pulse_from_json(const std::string& text);

enum class GateKind { hadamard, pi8, custom };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

/// Gate on the central spin, optionally paired with a bath target.
struct TargetGate {
  GateKind kind = GateKind::hadamard;
  DenseOperator central;  // 2x2 unitary
  /// Bath factor for full-system targets; identity when empty.
  std::optional<DenseOperator> bath;

  static TargetGate hadamard();
  /// diag(1, e^{i pi/4}).
  static TargetGate pi8();
  static TargetGate custom(DenseOperator central);

  /// central (x) bath, with bath = 1 unless set.
  DenseOperator full(int n_bath) const;
};

}  // namespace spinstar

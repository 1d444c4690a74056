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

#include "spinstar/pulse.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "spinstar/errors.hpp"

namespace spinstar {

void PulseSequence::validate(std::optional<double> bound) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("pulse: dt must be positive");
  }
  for (std::size_t m = 0; m < amplitudes.size(); ++m) {
    const double b = amplitudes[m];
    if (!std::isfinite(b)) {
      throw ConfigError("pulse: amplitude " + std::to_string(m) +
                        " is not finite");
    }
    if (bound && std::abs(b) > *bound) {
      throw ConfigError("pulse: amplitude " + std::to_string(m) +
                        " exceeds bound " + std::to_string(*bound));
    }
  }
}

std::size_t slice_count(double tau, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw ConfigError("tau must be nonnegative");
  }
  const double ratio = tau / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "tau=" << tau << " is not a multiple of dt=" << dt;
    throw ConfigError(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

void write_pulse_csv(std::ostream& out, const PulseSequence& pulse) {
  out.precision(17);
  out << "# dt=" << pulse.dt << "\n";
  out << "slice_index,amplitude\n";
  for (std::size_t m = 0; m < pulse.amplitudes.size(); ++m) {
    out << m << "," << pulse.amplitudes[m] << "\n";
  }
}

PulseSequence read_pulse_csv(std::istream& in, double default_dt) {
  PulseSequence pulse;
  pulse.dt = default_dt;
  std::string line;
  bool header_seen = false;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# dt=", 0) == 0) {
      pulse.dt = std::stod(line.substr(5));
      continue;
    }
    if (line.front() == '#') continue;
    if (!header_seen) {
      if (line != "slice_index,amplitude") {
        throw ConfigError("pulse csv: expected header 'slice_index,amplitude'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("pulse csv: malformed row '" + line + "'");
    }
    const auto index = std::stoul(line.substr(0, comma));
    if (index != expected) {
      throw ConfigError("pulse csv: slice indices must be 0,1,2,...");
    }
    pulse.amplitudes.push_back(std::stod(line.substr(comma + 1)));
    ++expected;
  }
  if (!header_seen) throw ConfigError("pulse csv: missing header");
  pulse.validate();
  return pulse;
}

std::string pulse_to_json(const PulseSequence& pulse) {
  nlohmann::json j;
  j["dt"] = pulse.dt;
  j["tau"] = pulse.tau();
  j["amplitudes"] = pulse.amplitudes;
  return j.dump();
}

PulseSequence pulse_from_json(const std::string& text) {
  PulseSequence pulse;
  try {
    const auto j = nlohmann::json::parse(text);
    pulse.dt = j.at("dt").get<double>();
    pulse.amplitudes = j.at("amplitudes").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("pulse json: ") + e.what());
  }
  pulse.validate();
  return pulse;
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::hadamard:
      return "hadamard";
    case GateKind::pi8:
      return "pi8";
    case GateKind::custom:
      return "custom";
  }
  return "custom";
}

GateKind gate_kind_from_string(const std::string& name) {
  if (name == "hadamard" || name == "H") return GateKind::hadamard;
  if (name == "pi8" || name == "T") return GateKind::pi8;
  if (name == "custom") return GateKind::custom;
  throw ConfigError("unknown target gate '" + name + "'");
}

TargetGate TargetGate::hadamard() {
  DenseOperator h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  return {GateKind::hadamard, h, std::nullopt};
}

TargetGate TargetGate::pi8() {
  DenseOperator t = DenseOperator::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = std::exp(kI * (std::numbers::pi / 4.0));
  return {GateKind::pi8, t, std::nullopt};
}

TargetGate TargetGate::custom(DenseOperator central) {
  if (central.rows() != 2 || central.cols() != 2) {
    throw DimensionMismatch("custom central gate must be 2x2");
  }
  if (!is_unitary(central, 1e-10)) {
    throw StructureError("custom central gate is not unitary");
  }
  return {GateKind::custom, std::move(central), std::nullopt};
}

DenseOperator TargetGate::full(int n_bath) const {
  const Index bath_dim = Index{1} << n_bath;
  if (bath) {
    if (bath->rows() != bath_dim || bath->cols() != bath_dim) {
      throw DimensionMismatch("bath target has wrong dimension");
    }
    return kron(central, *bath);
  }
  return kron(central, pauli::identity(bath_dim));
}

}  // namespace spinstar

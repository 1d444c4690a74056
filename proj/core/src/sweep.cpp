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

#include "spinstar/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "spinstar/errors.hpp"
#include "spinstar/grape.hpp"
#include "spinstar/parallel.hpp"

namespace spinstar {

int default_thread_count() {
  if (const char* env = std::getenv("SPINSTAR_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<double> TauGrid::values(double dt) const {
  if (!(step > 0.0)) throw ConfigError("tau grid step must be positive");
  if (!(start >= 0.0) || !(stop >= start)) {
    throw ConfigError("tau grid must satisfy 0 <= start <= stop");
  }
  // Work in whole slices so grid points are exact multiples of dt.
  const std::size_t first = slice_count(start, dt);
  const std::size_t stride = slice_count(step, dt);
  const double last = stop / dt + 1e-9;
  std::vector<double> out;
  for (std::size_t m = first; static_cast<double>(m) <= last; m += stride) {
    out.push_back(static_cast<double>(m) * dt);
  }
  return out;
}

void SweepConfig::validate() const {
  if (n_bath.empty()) throw ConfigError("sweep: n_bath list is empty");
  for (int n : n_bath) {
    if (n < 0) throw ConfigError("sweep: n_bath must be nonnegative");
    if (std::count(n_bath.begin(), n_bath.end(), n) > 1) {
      throw ConfigError("sweep: n_bath lists N=" + std::to_string(n) + " twice");
    }
    if (n > 40 || (std::int64_t{2} << n) > dim_cap) {
      throw ResourceLimitError("sweep: N=" + std::to_string(n) +
                               " exceeds the Hilbert dimension cap " +
                               std::to_string(dim_cap));
    }
  }
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("sweep: threshold must lie in (0, 1]");
  }
  if (restarts < 1) throw ConfigError("sweep: restarts must be at least 1");
  if (!(dt > 0.0)) throw ConfigError("sweep: dt must be positive");
  if (threads < 1) throw ConfigError("sweep: threads must be at least 1");
  if (tau.values(dt).empty()) throw ConfigError("sweep: tau grid is empty");
  for (const auto& [n, grid] : tau_windows) {
    if (grid.values(dt).empty()) {
      throw ConfigError("sweep: tau window for N=" + std::to_string(n) +
                        " is empty");
    }
  }
  for (int n : n_bath) (void)coupling_for(n);
}

const TauGrid& SweepConfig::grid_for(int n) const {
  const auto it = tau_windows.find(n);
  return it == tau_windows.end() ? tau : it->second;
}

CouplingScheme SweepConfig::coupling_for(int n) const {
  CouplingScheme scheme = coupling;
  if (scheme.kind == CouplingKind::different) {
    if (scheme.values.empty()) {
      scheme.values = default_different_couplings(n);
    } else if (scheme.values.size() < static_cast<std::size_t>(n)) {
      throw ConfigError("sweep: different couplings list has " +
                        std::to_string(scheme.values.size()) +
                        " values, N=" + std::to_string(n) + " needs more");
    } else {
      scheme.values.resize(static_cast<std::size_t>(n));
    }
  }
  return scheme;
}

std::vector<std::pair<double, double>> SweepResult::curve(int n) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& cell : cells) {
    if (cell.n_bath == n) out.emplace_back(cell.tau, cell.best_fidelity);
  }
  return out;
}

std::optional<double> estimate_tstar(
    const std::vector<std::pair<double, double>>& curve, double threshold) {
  if (curve.empty()) throw ConfigError("estimate_tstar: empty curve");
  for (const auto& [tau, fidelity] : curve) {
    if (fidelity >= threshold) return tau;
  }
  return std::nullopt;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t n_index,
                        std::size_t tau_index) {
  return derive_seed(master, n_index + 1, tau_index + 1);
}

SweepResult run_sweep(const SweepConfig& config,
                      const std::function<void(const SweepCell&)>& progress) {
  config.validate();
  SweepResult result;
  result.fidelity = config.fidelity;
  result.scheme = to_string(config.coupling.kind);
  result.seed = config.seed;
  result.threshold = config.threshold;

  for (std::size_t ni = 0; ni < config.n_bath.size(); ++ni) {
    const int n = config.n_bath[ni];
    const ControlProblem problem(SpinStarSystem(n, config.coupling_for(n)));
    const std::vector<double> taus = config.grid_for(n).values(config.dt);
    std::vector<std::pair<double, double>> curve;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      GrapeConfig grape;
      grape.fidelity = config.fidelity;
      grape.dt = config.dt;
      grape.restarts = config.restarts;
      grape.seed = cell_seed(config.seed, ni, ti);
      grape.initial_scale = config.initial_scale;
      grape.optimizer = config.optimizer;
      grape.threads = config.threads;

      const auto t0 = std::chrono::steady_clock::now();
      OptimizationRun run = optimize(problem, config.target, taus[ti], grape);
      const auto t1 = std::chrono::steady_clock::now();

      SweepCell cell;
      cell.n_bath = n;
      cell.tau = taus[ti];
      cell.restarts = static_cast<int>(run.restarts.size());
      cell.best_fidelity = run.best_fidelity;
      cell.mean_fidelity = run.mean_fidelity();
      cell.best_restart = run.best_restart;
      if (config.record_wall_time) {
        cell.wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      for (const auto& r : run.restarts) {
        cell.restart_fidelities.push_back(r.final_fidelity);
      }
      cell.best_pulse = std::move(run.best_pulse);
      curve.emplace_back(cell.tau, cell.best_fidelity);
      if (progress) progress(cell);
      const bool crossed = cell.best_fidelity >= config.threshold;
      result.cells.push_back(std::move(cell));
      if (crossed && config.stop_at_threshold) break;
    }
    result.t_star[n] = estimate_tstar(curve, config.threshold);
  }
  return result;
}

namespace {

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "n_bath,tau,restarts,best_fidelity,mean_fidelity,fidelity_kind,"
         "scheme,seed,wall_ms\n";
  for (const auto& cell : result.cells) {
    out << cell.n_bath << ',' << format_number(cell.tau, 10) << ','
        << cell.restarts << ',' << format_number(cell.best_fidelity, 17) << ','
        << format_number(cell.mean_fidelity, 17) << ','
        << to_string(result.fidelity) << ',' << result.scheme << ','
        << result.seed << ',' << format_number(cell.wall_ms, 6) << '\n';
  }
}

std::string sweep_summary_json(const SweepResult& result) {
  nlohmann::ordered_json t_star = nlohmann::ordered_json::object();
  for (const auto& [n, value] : result.t_star) {
    t_star[std::to_string(n)] =
        value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
  }
  nlohmann::ordered_json j;
  j["t_star"] = std::move(t_star);
  j["threshold"] = result.threshold;
  j["fidelity_kind"] = to_string(result.fidelity);
  j["scheme"] = result.scheme;
  j["seed"] = result.seed;
  return j.dump(2);
}

}  // namespace spinstar

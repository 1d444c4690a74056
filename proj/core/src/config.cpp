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

#include "spinstar/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spinstar/errors.hpp"

namespace spinstar {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

TauGrid parse_grid(const json& j, TauGrid grid, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  reject_unknown(j, {"start", "stop", "step"}, where);
  grid.start = j.value("start", grid.start);
  grid.stop = j.value("stop", grid.stop);
  grid.step = j.value("step", grid.step);
  return grid;
}

CouplingScheme parse_coupling(const json& j) {
  if (!j.is_object()) throw ConfigError("coupling: expected an object");
  reject_unknown(j, {"scheme", "value", "values", "lo", "hi", "seed", "rescale"},
                 "coupling");
  CouplingScheme s;
  s.kind = coupling_kind_from_string(j.value("scheme", std::string("equal")));
  s.value = j.value("value", s.value);
  s.values = j.value("values", s.values);
  s.lo = j.value("lo", s.lo);
  s.hi = j.value("hi", s.hi);
  s.seed = j.value("seed", s.seed);
  s.rescale = j.value("rescale", s.rescale);
  return s;
}

TargetGate parse_target(const json& j) {
  if (j.is_string()) {
    switch (gate_kind_from_string(j.get<std::string>())) {
      case GateKind::hadamard:
        return TargetGate::hadamard();
      case GateKind::pi8:
        return TargetGate::pi8();
      case GateKind::custom:
        throw ConfigError("target: custom gates need a \"central\" matrix");
    }
  }
  if (!j.is_object()) throw ConfigError("target: expected a name or object");
  reject_unknown(j, {"central"}, "target");
  const auto rows = j.at("central").get<std::vector<json>>();
  if (rows.size() != 2) throw ConfigError("target: central must be 2x2");
  DenseOperator m(2, 2);
  for (Index r = 0; r < 2; ++r) {
    const auto cols = rows[static_cast<std::size_t>(r)].get<std::vector<json>>();
    if (cols.size() != 2) throw ConfigError("target: central must be 2x2");
    for (Index c = 0; c < 2; ++c) {
      const json& entry = cols[static_cast<std::size_t>(c)];
      if (entry.is_number()) {
        m(r, c) = entry.get<double>();
      } else {
        const auto pair = entry.get<std::vector<double>>();
        if (pair.size() != 2) throw ConfigError("target: entries are [re, im]");
        m(r, c) = Complex(pair[0], pair[1]);
      }
    }
  }
  try {
    return TargetGate::custom(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("target: ") + e.what());
  }
}

LbfgsOptions parse_optimizer(const json& j) {
  if (!j.is_object()) throw ConfigError("optimizer: expected an object");
  reject_unknown(j,
                 {"max_iterations", "gradient_tolerance", "history", "armijo",
                  "backtrack", "max_backtracks", "bound", "value_target"},
                 "optimizer");
  LbfgsOptions o;
  o.max_iterations = j.value("max_iterations", o.max_iterations);
  o.gradient_tolerance = j.value("gradient_tolerance", o.gradient_tolerance);
  o.history = j.value("history", o.history);
  o.armijo = j.value("armijo", o.armijo);
  o.backtrack = j.value("backtrack", o.backtrack);
  o.max_backtracks = j.value("max_backtracks", o.max_backtracks);
  if (j.contains("bound") && !j["bound"].is_null()) {
    o.bound = j["bound"].get<double>();
  }
  if (j.contains("value_target") && !j["value_target"].is_null()) {
    o.value_target = j["value_target"].get<double>();
  }
  if (o.max_iterations < 0 || o.history < 1 || o.max_backtracks < 1 ||
      !(o.backtrack > 0.0 && o.backtrack < 1.0) ||
      !(o.armijo > 0.0 && o.armijo < 1.0) || (o.bound && !(*o.bound > 0.0))) {
    throw ConfigError("optimizer: invalid settings");
  }
  return o;
}

json grid_to_json(const TauGrid& g) {
  return {{"start", g.start}, {"stop", g.stop}, {"step", g.step}};
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    reject_unknown(j,
                   {"n_bath", "coupling", "target", "fidelity", "tau",
                    "tau_windows", "restarts", "threshold", "dt", "seed",
                    "threads", "initial_scale", "dim_cap", "record_wall_time",
                    "stop_at_threshold", "optimizer"},
                   "config");
    if (j.contains("n_bath")) {
      const json& n = j["n_bath"];
      c.n_bath = n.is_array() ? n.get<std::vector<int>>()
                              : std::vector<int>{n.get<int>()};
    }
    if (j.contains("coupling")) c.coupling = parse_coupling(j["coupling"]);
    if (j.contains("target")) c.target = parse_target(j["target"]);
    if (j.contains("fidelity")) {
      c.fidelity = fidelity_kind_from_string(j["fidelity"].get<std::string>());
    }
    c.restarts = c.fidelity == FidelityKind::f1 ? 200 : 500;
    if (j.contains("tau")) c.tau = parse_grid(j["tau"], c.tau, "tau");
    if (j.contains("tau_windows")) {
      for (const auto& [key, value] : j["tau_windows"].items()) {
        int n = 0;
        try {
          n = std::stoi(key);
        } catch (const std::exception&) {
          throw ConfigError("tau_windows: key '" + key + "' is not an integer");
        }
        c.tau_windows[n] = parse_grid(value, c.tau, "tau_windows");
      }
    }
    c.restarts = j.value("restarts", c.restarts);
    c.threshold = j.value("threshold", c.threshold);
    c.dt = j.value("dt", c.dt);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.initial_scale = j.value("initial_scale", c.initial_scale);
    c.dim_cap = j.value("dim_cap", c.dim_cap);
    c.record_wall_time = j.value("record_wall_time", c.record_wall_time);
    c.stop_at_threshold = j.value("stop_at_threshold", c.stop_at_threshold);
    if (j.contains("optimizer")) c.optimizer = parse_optimizer(j["optimizer"]);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_sweep_config(text.str());
}

std::string sweep_config_to_json(const SweepConfig& c) {
  nlohmann::ordered_json j;
  j["n_bath"] = c.n_bath;
  json coupling = {{"scheme", to_string(c.coupling.kind)},
                   {"rescale", c.coupling.rescale}};
  switch (c.coupling.kind) {
    case CouplingKind::equal:
      coupling["value"] = c.coupling.value;
      break;
    case CouplingKind::different:
      coupling["values"] = c.coupling.values;
      break;
    case CouplingKind::random_uniform:
      coupling["lo"] = c.coupling.lo;
      coupling["hi"] = c.coupling.hi;
      coupling["seed"] = c.coupling.seed;
      break;
  }
  j["coupling"] = coupling;
  if (c.target.kind == GateKind::custom) {
    json rows = json::array();
    for (Index r = 0; r < 2; ++r) {
      json row = json::array();
      for (Index col = 0; col < 2; ++col) {
        row.push_back({c.target.central(r, col).real(),
                       c.target.central(r, col).imag()});
      }
      rows.push_back(row);
    }
    j["target"] = {{"central", rows}};
  } else {
    j["target"] = to_string(c.target.kind);
  }
  j["fidelity"] = to_string(c.fidelity);
  j["tau"] = grid_to_json(c.tau);
  json windows = json::object();
  for (const auto& [n, g] : c.tau_windows) {
    windows[std::to_string(n)] = grid_to_json(g);
  }
  j["tau_windows"] = windows;
  j["restarts"] = c.restarts;
  j["threshold"] = c.threshold;
  j["dt"] = c.dt;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["initial_scale"] = c.initial_scale;
  j["dim_cap"] = c.dim_cap;
  j["record_wall_time"] = c.record_wall_time;
  j["stop_at_threshold"] = c.stop_at_threshold;
  json opt = {{"max_iterations", c.optimizer.max_iterations},
              {"gradient_tolerance", c.optimizer.gradient_tolerance},
              {"history", c.optimizer.history},
              {"armijo", c.optimizer.armijo},
              {"backtrack", c.optimizer.backtrack},
              {"max_backtracks", c.optimizer.max_backtracks}};
  if (c.optimizer.bound) opt["bound"] = *c.optimizer.bound;
  if (c.optimizer.value_target) opt["value_target"] = *c.optimizer.value_target;
  j["optimizer"] = opt;
  return j.dump(2);
}

}  // namespace spinstar

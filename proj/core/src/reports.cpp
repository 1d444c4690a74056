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

#include "spinstar/reports.hpp"

#include <algorithm>

#include <json.hpp>

#include "spinstar/errors.hpp"

namespace spinstar {

namespace {

using ojson = nlohmann::ordered_json;

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "x";
}

ojson system_json(const SpinStarSystem& sys) {
  ojson j;
  j["n_bath"] = sys.n_bath();
  j["hilbert_dim"] = sys.dim();
  j["scheme"] = to_string(sys.scheme().kind);
  j["rescale"] = sys.scheme().rescale;
  j["couplings"] = sys.couplings();
  return j;
}

}  // namespace

std::string lie_dim_report(const SpinStarSystem& sys, const LieClosure& closure,
                           double elapsed_ms) {
  const bool equal = sys.has_equal_couplings();
  const std::int64_t expected = equal ? dimension_formula(sys.n_bath())
                                      : full_su_dimension(sys.n_bath());
  ojson j = system_json(sys);
  j["dim"] = closure.dim();
  j["formula"] = equal ? "equal_coupling" : "full_su";
  j["formula_dim"] = expected;
  j["match"] = static_cast<std::int64_t>(closure.dim()) == expected;
  j["full_su_dim"] = full_su_dimension(sys.n_bath());
  j["max_depth"] = closure.max_depth();
  ojson by_depth = ojson::array();
  for (int k = 0; k <= closure.max_depth(); ++k) {
    by_depth.push_back(closure.span_size_at_depth(k));
  }
  j["span_size_by_depth"] = by_depth;
  j["rank_test"] = closure.exact_span ? "exact" : "numerical";
  if (!closure.independence.empty()) {
    j["min_independence"] = *std::min_element(closure.independence.begin(),
                                              closure.independence.end());
  }
  j["saturated"] = closure.saturated;
  j["elapsed_ms"] = elapsed_ms;
  return j.dump(2);
}

std::vector<MembershipQuery> standard_membership_queries(
    const SpinStarSystem& sys) {
  std::vector<MembershipQuery> out;
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    out.push_back({std::string("i sigma_") + axis_name(axis) + " (x) 1",
                   kI * central_pauli(sys, axis)});
  }
  for (int k = 1; k <= sys.n_bath(); ++k) {
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
      out.push_back({std::string("i sigma_") + axis_name(axis) + "^(" +
                         std::to_string(k) + ")",
                     kI * bath_pauli(sys, k, axis)});
    }
  }
  return out;
}

std::string membership_report(const SpinStarSystem& sys,
                              const LieClosure& closure,
                              const std::vector<MembershipQuery>& queries) {
  ojson j = system_json(sys);
  j["dim"] = closure.dim();
  ojson items = ojson::array();
  for (const auto& q : queries) {
    const Membership m = contains(closure, q.element);
    ojson item;
    item["element"] = q.label;
    item["contained"] = m.contained;
    item["exact"] = m.exact;
    item["residual"] = m.residual;
    if (m.contained) {
      item["depth"] = element_depth(closure, q.element);
    } else {
      item["depth"] = nullptr;
    }
    items.push_back(item);
  }
  j["queries"] = items;
  return j.dump(2);
}

std::string ladder_basis_report(const SpinStarSystem& sys,
                              const LadderBasisReport& report) {
  ojson j = system_json(sys);
  j["all_contained"] = report.all_contained;
  j["max_residual"] = report.max_residual;
  ojson items = ojson::array();
  for (const auto& c : report.checks) {
    items.push_back({{"axis", axis_name(c.axis)},
                     {"l", c.l},
                     {"k", c.k},
                     {"s", c.s},
                     {"contained", c.membership.contained},
                     {"residual", c.membership.residual}});
  }
  j["elements"] = items;
  return j.dump(2);
}

std::string coupling_report(const std::vector<double>& couplings,
                            const CouplingAssumptions& check) {
  ojson j;
  j["couplings"] = couplings;
  j["distinct_magnitudes"] = check.distinct_magnitudes;
  j["distinct_gaps"] = check.distinct_gaps;
  j["pass"] = check.pass();
  j["violations"] = check.violations;
  return j.dump(2);
}

std::string optimization_report(const SpinStarSystem& sys,
                                const TargetGate& target,
                                const GrapeConfig& config,
                                const OptimizationRun& run) {
  ojson j = system_json(sys);
  j["target"] = to_string(target.kind);
  j["fidelity_kind"] = to_string(config.fidelity);
  j["tau"] = run.tau;
  j["dt"] = config.dt;
  j["seed"] = config.seed;
  j["restarts"] = run.restarts.size();
  j["best_fidelity"] = run.best_fidelity;
  j["mean_fidelity"] = run.mean_fidelity();
  j["best_restart"] = run.best_restart;
  if (config.optimizer.bound) {
    j["amplitude_bound"] = *config.optimizer.bound;
  } else {
    j["amplitude_bound"] = nullptr;
  }
  ojson restarts = ojson::array();
  for (const auto& r : run.restarts) {
    restarts.push_back({{"seed", r.seed},
                        {"initial_fidelity", r.initial_fidelity},
                        {"final_fidelity", r.final_fidelity},
                        {"iterations", r.iterations},
                        {"stop", to_string(r.reason)}});
  }
  j["restart_records"] = restarts;
  j["best_pulse"] = {{"dt", run.best_pulse.dt},
                     {"amplitudes", run.best_pulse.amplitudes}};
  return j.dump(2);
}

}  // namespace spinstar

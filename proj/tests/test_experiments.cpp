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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "spinstar/config.hpp"
#include "spinstar/errors.hpp"
#include "spinstar/reports.hpp"
#include "spinstar/sweep.hpp"

using namespace spinstar;
using nlohmann::json;

namespace {

SweepConfig tiny_sweep() {
  SweepConfig c;
  c.n_bath = {0, 1};
  c.tau = TauGrid{0.5, 1.0, 0.5};
  c.restarts = 3;
  c.seed = 17;
  c.optimizer.max_iterations = 25;
  c.record_wall_time = false;
  return c;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_sweep_csv(out, r);
  return out.str();
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("T* is the first grid time reaching the threshold") {
    const std::vector<std::pair<double, double>> curve{
        {0.5, 0.4}, {1.0, 0.9}, {1.5, 0.996}, {2.0, 0.97}, {2.5, 0.999}};
    CHECK(estimate_tstar(curve, 0.995) == 1.5);
    CHECK(estimate_tstar(curve, 0.9) == 1.0);
    CHECK(estimate_tstar(curve, 0.9995) == std::nullopt);
    CHECK(estimate_tstar(curve, 0.996) == 1.5);  // threshold is inclusive
    CHECK_THROWS_AS(estimate_tstar({}, 0.995), ConfigError);
  }

  TEST_CASE("T* does not increase when the threshold drops") {
    const std::vector<std::pair<double, double>> curve{
        {0.5, 0.2}, {1.0, 0.6}, {1.5, 0.55}, {2.0, 0.93}, {2.5, 0.999}};
    double previous = 1e9;
    for (double th : {0.999, 0.95, 0.9, 0.6, 0.3, 0.1}) {
      const auto t = estimate_tstar(curve, th);
      REQUIRE(t.has_value());
      CHECK(*t <= previous);
      previous = *t;
    }
  }

  TEST_CASE("tau grid points are exact multiples of dt") {
    const TauGrid g{0.5, 2.0, 0.5};
    const auto coarse = g.values(0.05);
    REQUIRE(coarse.size() == 4);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      CHECK(coarse[i] == static_cast<double>(10 * (i + 1)) * 0.05);
    }
    const TauGrid fine{0.1, 0.3, 0.1};
    const auto v = fine.values(0.05);
    REQUIRE(v.size() == 3);
    CHECK(v[2] == 6 * 0.05);
    CHECK(TauGrid{0.0, 0.0, 0.5}.values(0.05) == std::vector<double>{0.0});
    CHECK_THROWS_AS((TauGrid{0.5, 1.0, 0.0}.values(0.05)), ConfigError);
    CHECK_THROWS_AS((TauGrid{2.0, 1.0, 0.5}.values(0.05)), ConfigError);
    CHECK_THROWS_AS((TauGrid{0.5, 1.0, 0.07}.values(0.05)), ConfigError);
  }

  TEST_CASE("sweep validation") {
    SweepConfig c = tiny_sweep();
    CHECK_NOTHROW(c.validate());
    c.n_bath = {8};
    CHECK_THROWS_AS(c.validate(), ResourceLimitError);
    c.dim_cap = 512;
    CHECK_NOTHROW(c.validate());
    c = tiny_sweep();
    c.n_bath = {1, 1};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = tiny_sweep();
    c.threshold = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = tiny_sweep();
    c.restarts = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = tiny_sweep();
    c.coupling = CouplingScheme::different({1.0});
    c.n_bath = {2};
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("coupling resolution per N") {
    SweepConfig c;
    c.coupling = CouplingScheme::different({});
    CHECK(c.coupling_for(3).values == default_different_couplings(3));
    c.coupling = CouplingScheme::different({1.0, 1.5, 2.2});
    CHECK(c.coupling_for(2).values == std::vector<double>{1.0, 1.5});
    c.tau_windows[2] = TauGrid{3.0, 4.0, 0.5};
    CHECK(c.grid_for(2).start == 3.0);
    CHECK(c.grid_for(1).start == c.tau.start);
  }

  TEST_CASE("sweep output is bit-identical for a fixed seed") {
    const SweepConfig c = tiny_sweep();
    const SweepResult a = run_sweep(c);
    const SweepResult b = run_sweep(c);
    CHECK(csv_of(a) == csv_of(b));
    CHECK(sweep_summary_json(a) == sweep_summary_json(b));
    SweepConfig threaded = c;
    threaded.threads = 2;
    CHECK(csv_of(run_sweep(threaded)) == csv_of(a));
    SweepConfig reseeded = c;
    reseeded.seed = 18;
    CHECK(csv_of(run_sweep(reseeded)) != csv_of(a));
  }

  TEST_CASE("sweep cells and CSV layout") {
    int calls = 0;
    const SweepResult r =
        run_sweep(tiny_sweep(), [&](const SweepCell&) { ++calls; });
    CHECK(calls == 4);
    REQUIRE(r.cells.size() == 4);
    CHECK(r.cells[0].n_bath == 0);
    CHECK(r.cells[3].n_bath == 1);
    CHECK(r.cells[3].tau == doctest::Approx(1.0));
    for (const SweepCell& cell : r.cells) {
      CHECK(cell.restart_fidelities.size() == 3);
      CHECK(cell.mean_fidelity <= cell.best_fidelity);
      CHECK(cell.wall_ms == 0.0);
      CHECK(cell.best_pulse.slices() == slice_count(cell.tau, 0.05));
    }
    const std::string csv = csv_of(r);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "n_bath,tau,restarts,best_fidelity,mean_fidelity,fidelity_kind,scheme,"
          "seed,wall_ms");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 4);
    CHECK(r.curve(1).size() == 2);
  }

  TEST_CASE("stop at threshold skips the rest of the grid") {
    SweepConfig c = tiny_sweep();
    c.n_bath = {0};
    c.tau = TauGrid{0.5, 2.0, 0.5};
    const SweepResult full = run_sweep(c);
    REQUIRE(full.cells.size() == 4);
    // A threshold the second grid point reaches, so the grid is cut short.
    c.threshold = full.cells[1].best_fidelity;
    const auto t = estimate_tstar(full.curve(0), c.threshold);
    REQUIRE(t.has_value());
    REQUIRE(*t <= full.cells[1].tau);
    c.stop_at_threshold = true;
    const SweepResult r = run_sweep(c);
    CHECK(r.t_star.at(0) == t);
    CHECK(r.cells.size() < full.cells.size());
    CHECK(r.cells.back().tau == *t);
    // Cells before the crossing are unchanged.
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      CHECK(r.cells[i].best_fidelity == full.cells[i].best_fidelity);
    }
  }

  TEST_CASE("summary JSON lists T* per N") {
    SweepConfig c = tiny_sweep();
    c.threshold = 1.0;
    const json s = json::parse(sweep_summary_json(run_sweep(c)));
    CHECK(s["t_star"]["0"].is_null());
    CHECK(s["t_star"]["1"].is_null());
    CHECK(s["threshold"] == 1.0);
    CHECK(s["fidelity_kind"] == "f1");
    CHECK(s["scheme"] == "equal");
    CHECK(s["seed"] == 17);
  }

  TEST_CASE("cell seeds are independent of scheduling") {
    CHECK(cell_seed(3, 0, 0) == cell_seed(3, 0, 0));
    CHECK(cell_seed(3, 0, 1) != cell_seed(3, 1, 0));
  }
}

TEST_SUITE("config") {
  TEST_CASE("full configuration parses") {
    const SweepConfig c = parse_sweep_config(R"({
      "n_bath": [0, 2],
      "coupling": {"scheme": "different", "values": [1.0, 1.5], "rescale": true},
      "target": "pi8",
      "fidelity": "f1",
      "tau": {"start": 0.5, "stop": 3.0, "step": 0.5},
      "tau_windows": {"2": {"start": 1.0, "stop": 2.0, "step": 0.5}},
      "restarts": 7, "threshold": 0.99, "dt": 0.025, "seed": 5,
      "threads": 2, "initial_scale": 2.0, "dim_cap": 64,
      "record_wall_time": false, "stop_at_threshold": true,
      "optimizer": {"max_iterations": 100, "bound": 50.0, "value_target": 0.999}
    })");
    CHECK(c.n_bath == std::vector<int>{0, 2});
    CHECK(c.coupling.kind == CouplingKind::different);
    CHECK(c.coupling.rescale);
    CHECK(c.target.kind == GateKind::pi8);
    CHECK(c.restarts == 7);
    CHECK(c.dt == 0.025);
    CHECK(c.grid_for(2).start == 1.0);
    CHECK(c.optimizer.bound == 50.0);
    CHECK(c.optimizer.value_target == 0.999);
    CHECK_FALSE(c.record_wall_time);
    CHECK(c.stop_at_threshold);
  }

  TEST_CASE("restart count defaults by fidelity") {
    CHECK(parse_sweep_config("{}").restarts == 200);
    CHECK(parse_sweep_config(R"({"fidelity": "f2"})").restarts == 500);
    CHECK(parse_sweep_config(R"({"fidelity": "f2", "restarts": 3})").restarts == 3);
  }

  TEST_CASE("round trip through JSON") {
    SweepConfig c = tiny_sweep();
    c.coupling = CouplingScheme::random_uniform(0.5, 1.5, 99);
    c.target = TargetGate::pi8();
    c.tau_windows[1] = TauGrid{1.0, 1.5, 0.5};
    c.optimizer.bound = 10.0;
    const std::string once = sweep_config_to_json(c);
    const SweepConfig back = parse_sweep_config(once);
    CHECK(sweep_config_to_json(back) == once);
    CHECK(back.coupling.seed == 99);
    CHECK(back.optimizer.bound == 10.0);
  }

  TEST_CASE("custom target") {
    const SweepConfig c = parse_sweep_config(
        R"({"target": {"central": [[0, 1], [1, 0]]}})");
    CHECK(c.target.kind == GateKind::custom);
    CHECK(c.target.central(0, 1) == Complex(1.0, 0.0));
    CHECK_THROWS_AS(parse_sweep_config(R"({"target": {"central": [[1, 1], [1, 1]]}})"),
                    ConfigError);
  }

  TEST_CASE("malformed input is a configuration error") {
    CHECK_THROWS_AS(parse_sweep_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config("[]"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"restart": 5})"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"optimizer": {"lr": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"fidelity": "f3"})"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"n_bath": "two"})"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"tau_windows": {"x": {}}})"), ConfigError);
    CHECK_THROWS_AS(load_sweep_config("/nonexistent/config.json"), ConfigError);
  }
}

TEST_SUITE("reports") {
  TEST_CASE("closure dimension report") {
    const SpinStarSystem sys(2, CouplingScheme::equal(1.0));
    const json r = json::parse(lie_dim_report(sys, closure(sys), 1.0));
    CHECK(r["dim"] == 38);
    CHECK(r["formula_dim"] == 38);
    CHECK(r["match"] == true);
    CHECK(r["formula"] == "equal_coupling");
    CHECK(r["rank_test"] == "exact");
    const SpinStarSystem diff(2, CouplingScheme::different({1.0, 1.5}));
    const json d = json::parse(lie_dim_report(diff, closure(diff), 1.0));
    CHECK(d["formula"] == "full_su");
    CHECK(d["match"] == true);
  }

  TEST_CASE("membership report") {
    const SpinStarSystem sys(2, CouplingScheme::equal(1.0));
    const auto queries = standard_membership_queries(sys);
    CHECK(queries.size() == 9);
    const json r = json::parse(membership_report(sys, closure(sys), queries));
    const json& rows = r.is_array() ? r : r["queries"];
    REQUIRE(rows.size() == 9);
    CHECK(rows[0]["contained"] == true);
    CHECK(rows[0]["depth"] == 7);
    CHECK(rows[3]["contained"] == false);
    CHECK(rows[3]["depth"].is_null());
  }

  TEST_CASE("coupling report flags violations") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const json r = json::parse(coupling_report(a, coupling_assumptions_check(a)));
    CHECK(r["pass"] == false);
  }
}

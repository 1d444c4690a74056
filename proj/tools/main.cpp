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

// spinstar: command-line front end for closure, membership, optimization and
// sweep runs. Exit codes: 0 success, 1 internal error, 2 configuration error,
// 3 resource guard.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinstar/config.hpp"
#include "spinstar/errors.hpp"
#include "spinstar/grape.hpp"
#include "spinstar/lie_closure.hpp"
#include "spinstar/parallel.hpp"
#include "spinstar/reports.hpp"
#include "spinstar/sweep.hpp"

namespace fs = std::filesystem;
using namespace spinstar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<int> threads;
  std::optional<std::string> fidelity;
  std::int64_t dim_cap = 256;
  bool dim_cap_set = false;

  std::optional<int> n;
  std::optional<std::string> scheme;
  std::vector<double> couplings;
  std::optional<double> value;
  bool rescale = false;

  // lie-dim / membership
  std::string rank_test = "exact";
  double tol = default_tolerances().lie_rank;
  // verify-appendix-a
  int max_order = 3;
  double ladder_tol = 1e-7;
  // optimize
  std::optional<double> tau;
  std::optional<std::string> target;
  std::optional<int> restarts;
  std::optional<double> bound;
  std::optional<double> dt;
  bool quiet = false;
};

SweepConfig base_config(const Options& o) {
  SweepConfig c;
  if (!o.config_path.empty()) c = load_sweep_config(o.config_path);
  if (o.fidelity) {
    c.fidelity = fidelity_kind_from_string(*o.fidelity);
    if (o.config_path.empty()) {
      c.restarts = c.fidelity == FidelityKind::f1 ? 200 : 500;
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.dim_cap_set || o.config_path.empty()) c.dim_cap = o.dim_cap;
  if (o.n) c.n_bath = {*o.n};
  if (o.scheme) {
    c.coupling.kind = coupling_kind_from_string(*o.scheme);
    c.coupling.values.clear();
  }
  if (!o.couplings.empty()) {
    if (!o.scheme) c.coupling.kind = CouplingKind::different;
    c.coupling.values = o.couplings;
  }
  if (o.value) c.coupling.value = *o.value;
  if (o.rescale) c.coupling.rescale = true;
  if (o.seed && c.coupling.kind == CouplingKind::random_uniform &&
      o.config_path.empty()) {
    c.coupling.seed = *o.seed;
  }
  if (o.target) {
    switch (gate_kind_from_string(*o.target)) {
      case GateKind::hadamard:
        c.target = TargetGate::hadamard();
        break;
      case GateKind::pi8:
        c.target = TargetGate::pi8();
        break;
      case GateKind::custom:
        throw ConfigError("custom targets are only accepted via --config");
    }
  }
  if (o.restarts) c.restarts = *o.restarts;
  if (o.bound) c.optimizer.bound = *o.bound;
  if (o.dt) c.dt = *o.dt;
  if (c.threads < 1) throw ConfigError("--threads must be at least 1");
  return c;
}

/// The single spin star a non-sweep subcommand acts on.
SpinStarSystem single_system(const SweepConfig& c) {
  if (c.n_bath.size() != 1) {
    throw ConfigError("this subcommand needs exactly one N (use --n)");
  }
  const int n = c.n_bath.front();
  if (n < 0) throw ConfigError("N must be nonnegative");
  if (n > 40 || (std::int64_t{2} << n) > c.dim_cap) {
    throw ResourceLimitError("N=" + std::to_string(n) +
                             ": Hilbert dimension exceeds the cap " +
                             std::to_string(c.dim_cap) + " (see --dim-cap)");
  }
  return SpinStarSystem(n, c.coupling_for(n));
}

fs::path prepare_out(const Options& o) {
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text << '\n';
}

void emit(const Options& o, const fs::path& path, const std::string& json) {
  write_file(path, json);
  if (!o.quiet) std::cout << json << '\n';
}

std::string system_tag(const SpinStarSystem& sys) {
  return "n" + std::to_string(sys.n_bath()) + "_" + to_string(sys.scheme().kind);
}

ClosureOptions closure_options(const Options& o) {
  ClosureOptions opts;
  if (o.rank_test == "exact") {
    opts.rank_test = RankTest::exact;
  } else if (o.rank_test == "numerical") {
    opts.rank_test = RankTest::numerical;
  } else {
    throw ConfigError("--rank-test must be exact or numerical");
  }
  opts.tol = o.tol;
  return opts;
}

int run_lie_dim(const Options& o) {
  const SweepConfig c = base_config(o);
  const SpinStarSystem sys = single_system(c);
  const auto t0 = std::chrono::steady_clock::now();
  const LieClosure cl = closure(sys, closure_options(o));
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  const fs::path dir = prepare_out(o);
  emit(o, dir / ("lie_dim_" + system_tag(sys) + ".json"),
       lie_dim_report(sys, cl, ms));
  return kExitOk;
}

int run_membership(const Options& o) {
  const SweepConfig c = base_config(o);
  const SpinStarSystem sys = single_system(c);
  const LieClosure cl = closure(sys, closure_options(o));
  const fs::path dir = prepare_out(o);
  emit(o, dir / ("membership_" + system_tag(sys) + ".json"),
       membership_report(sys, cl, standard_membership_queries(sys)));
  return kExitOk;
}

int run_ladder_basis(const Options& o) {
  const SweepConfig c = base_config(o);
  const SpinStarSystem sys = single_system(c);
  const LieClosure cl = closure(sys, closure_options(o));
  const LadderBasisReport report =
      verify_equal_coupling_basis(sys, cl, o.max_order, o.ladder_tol);
  const fs::path dir = prepare_out(o);
  emit(o, dir / ("ladder_basis_" + system_tag(sys) + ".json"),
       ladder_basis_report(sys, report));
  return kExitOk;
}

int run_check_couplings(const Options& o) {
  const SweepConfig c = base_config(o);
  std::vector<double> couplings = o.couplings;
  if (couplings.empty()) couplings = single_system(c).couplings();
  const CouplingAssumptions check = coupling_assumptions_check(couplings);
  const fs::path dir = prepare_out(o);
  emit(o, dir / "check_couplings.json", coupling_report(couplings, check));
  return kExitOk;
}

int run_optimize(const Options& o) {
  const SweepConfig c = base_config(o);
  const SpinStarSystem sys = single_system(c);
  double tau = 0.0;
  if (o.tau) {
    tau = *o.tau;
  } else {
    const auto grid = c.grid_for(sys.n_bath()).values(c.dt);
    if (grid.empty()) throw ConfigError("optimize: no tau given");
    tau = grid.front();
  }
  GrapeConfig g;
  g.fidelity = c.fidelity;
  g.dt = c.dt;
  g.restarts = c.restarts;
  g.seed = c.seed;
  g.initial_scale = c.initial_scale;
  g.optimizer = c.optimizer;
  g.threads = c.threads;
  const OptimizationRun run = optimize(sys, c.target, tau, g);
  const fs::path dir = prepare_out(o);
  std::ofstream pulse_out(dir / ("optimize_" + system_tag(sys) + "_pulse.csv"));
  write_pulse_csv(pulse_out, run.best_pulse);
  emit(o, dir / ("optimize_" + system_tag(sys) + ".json"),
       optimization_report(sys, c.target, g, run));
  return kExitOk;
}

std::string tau_tag(double tau) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << tau;
  return s.str();
}

int run_sweep_command(const Options& o) {
  const SweepConfig c = base_config(o);
  c.validate();
  const fs::path dir = prepare_out(o);
  const fs::path pulses = dir / "pulses";
  fs::create_directories(pulses);
  write_file(dir / "sweep_config.json", sweep_config_to_json(c));
  const SweepResult result = run_sweep(c, [&](const SweepCell& cell) {
    std::ofstream out(pulses / ("n" + std::to_string(cell.n_bath) + "_tau" +
                                tau_tag(cell.tau) + ".csv"));
    write_pulse_csv(out, cell.best_pulse);
    if (!o.quiet) {
      std::cerr << "N=" << cell.n_bath << " tau=" << cell.tau
                << " best=" << std::setprecision(6) << cell.best_fidelity
                << '\n';
    }
  });
  {
    std::ofstream csv(dir / "sweep.csv");
    if (!csv) throw ConfigError("cannot write sweep.csv");
    write_sweep_csv(csv, result);
  }
  emit(o, dir / "sweep_summary.json", sweep_summary_json(result));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-star controllability and GRAPE toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--out", o.out_dir, "Output directory")
        ->capture_default_str();
    sub->add_option("--threads", o.threads,
                    "Worker threads (default: SPINSTAR_THREADS, else all cores)");
    sub->add_option("--fidelity", o.fidelity, "f1 or f2")
        ->check(CLI::IsMember({"f1", "f2"}));
    sub->add_option_function<std::int64_t>(
           "--dim-cap",
           [&](const std::int64_t& v) {
             o.dim_cap = v;
             o.dim_cap_set = true;
           },
           "Largest Hilbert dimension 2^(N+1) accepted (default 256)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--n", o.n, "Number of bath spins");
    sub->add_option("--scheme", o.scheme,
                    "Coupling scheme: equal, different, random_uniform");
    sub->add_option("--couplings", o.couplings, "Explicit couplings A_1..A_N")
        ->delimiter(',');
    sub->add_option("--value", o.value, "Equal-coupling value");
    sub->add_flag("--rescale", o.rescale, "Divide couplings by sqrt(N)");
    sub->add_flag("--quiet", o.quiet, "Do not echo reports to stdout");
  };
  auto add_closure = [&](CLI::App* sub) {
    sub->add_option("--rank-test", o.rank_test, "exact or numerical")
        ->capture_default_str();
    sub->add_option("--tol", o.tol, "Numerical rank tolerance")
        ->capture_default_str();
  };

  auto* lie_dim = app.add_subcommand(
      "lie-dim", "Closure dimension compared with the expected formula");
  add_common(lie_dim);
  add_closure(lie_dim);

  auto* membership = app.add_subcommand(
      "membership", "Membership and depth of single-spin Pauli elements");
  add_common(membership);
  add_closure(membership);

  auto* ladder = app.add_subcommand(
      "verify-appendix-a",
      "Check the equal-coupling ladder basis elements against the closure");
  add_common(ladder);
  add_closure(ladder);
  ladder->add_option("--max-order", o.max_order, "Largest l+k+s")
      ->capture_default_str();
  ladder->add_option("--ladder-tol", o.ladder_tol, "Residual tolerance")
      ->capture_default_str();

  auto* opt = app.add_subcommand("optimize", "Multi-start GRAPE at one tau");
  add_common(opt);
  opt->add_option("--tau", o.tau, "Driving time (multiple of dt)");
  opt->add_option("--target", o.target, "hadamard or pi8");
  opt->add_option("--restarts", o.restarts, "Random restarts");
  opt->add_option("--bound", o.bound, "Amplitude bound |B| <= bound");
  opt->add_option("--dt", o.dt, "Slice duration");

  auto* sweep = app.add_subcommand("sweep", "Fidelity-versus-tau sweep");
  add_common(sweep);
  sweep->add_option("--target", o.target, "hadamard or pi8");
  sweep->add_option("--restarts", o.restarts, "Random restarts per cell");
  sweep->add_option("--bound", o.bound, "Amplitude bound |B| <= bound");
  sweep->add_option("--dt", o.dt, "Slice duration");

  auto* check = app.add_subcommand(
      "check-couplings", "Check distinct magnitudes and distinct gaps");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  // A config file keeps its own thread count unless --threads overrides it.
  if (!o.threads && o.config_path.empty()) o.threads = default_thread_count();

  try {
    if (*lie_dim) return run_lie_dim(o);
    if (*membership) return run_membership(o);
    if (*ladder) return run_ladder_basis(o);
    if (*opt) return run_optimize(o);
    if (*sweep) return run_sweep_command(o);
    if (*check) return run_check_couplings(o);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

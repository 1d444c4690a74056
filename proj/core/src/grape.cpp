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

#include "spinstar/grape.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "spinstar/errors.hpp"
#include "spinstar/parallel.hpp"

namespace spinstar {

ControlProblem::ControlProblem(const SpinStarSystem& sys)
    : n_bath_(sys.n_bath()),
      drift_(drift_hamiltonian(sys)),
      control_(control_hamiltonian(sys)) {}

Propagation propagate(const ControlProblem& problem,
                      const PulseSequence& pulse) {
  pulse.validate();
  if (pulse.slices() == 0) {
    throw ConfigError("propagate: pulse has no slices");
  }
  Propagation out;
  out.spectra.reserve(pulse.slices());
  out.slices.reserve(pulse.slices());
  out.total = DenseOperator::Identity(problem.dim(), problem.dim());
  for (double b : pulse.amplitudes) {
    const DenseOperator h = problem.drift() + b * problem.control();
    out.spectra.push_back(eig_hermitian(h));
    out.slices.push_back(expm_unitary(out.spectra.back(), pulse.dt));
    out.total = (out.slices.back() * out.total).eval();
  }
  return out;
}

Propagation propagate(const SpinStarSystem& sys, const PulseSequence& pulse) {
  return propagate(ControlProblem(sys), pulse);
}

namespace {

/// Daleckii-Krein kernel of exp(-i x dt) in a slice eigenbasis:
/// (e^{-i l_j dt} - e^{-i l_k dt}) / (l_j - l_k), written through sinc so that
/// close and equal eigenvalues reach the limit -i dt e^{-i l dt} smoothly.
DenseOperator exponential_kernel(const RealVector& lambda, double dt,
                                 double degenerate_gap,
                                 std::size_t& degenerate_pairs) {
  const Index d = lambda.size();
  DenseOperator kernel(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      const double gap = lambda(j) - lambda(k);
      const double half = 0.5 * gap * dt;
      double sinc = 1.0;
      if (std::abs(gap) < degenerate_gap) {
        if (j < k) ++degenerate_pairs;
      } else {
        sinc = std::sin(half) / half;
      }
      kernel(j, k) =
          -kI * dt * std::exp(-kI * (0.5 * (lambda(j) + lambda(k)) * dt)) * sinc;
    }
  }
  return kernel;
}

/// g_m = Re tr(A^dagger dU/dB_m) for every slice.
RealVector weighted_gradient(const ControlProblem& problem,
                             const PulseSequence& pulse,
                             const Propagation& prop, const DenseOperator& a,
                             std::size_t& degenerate_pairs) {
  const std::size_t m_count = pulse.slices();
  const Index d = problem.dim();
  const double gap_tol = default_tolerances().degenerate_gap;

  // forward[m] = slices[m-1] ... slices[0]
  std::vector<DenseOperator> forward(m_count);
  forward[0] = DenseOperator::Identity(d, d);
  for (std::size_t m = 1; m < m_count; ++m) {
    forward[m] = prop.slices[m - 1] * forward[m - 1];
  }

  RealVector grad(static_cast<Index>(m_count));
  DenseOperator left = a.adjoint();  // A^dagger slices[M-1] ... slices[m+1]
  for (std::size_t m = m_count; m-- > 0;) {
    const auto& spectrum = prop.spectra[m];
    const DenseOperator& v = spectrum.eigenvectors;
    const DenseOperator x = forward[m] * left;
    const DenseOperator y = v.adjoint() * x * v;
    const DenseOperator k = v.adjoint() * problem.control() * v;
    const DenseOperator kernel = exponential_kernel(
        spectrum.eigenvalues, pulse.dt, gap_tol, degenerate_pairs);
    // tr(Y (kernel o K)) = sum_jk Y_kj kernel_jk K_jk
    grad(static_cast<Index>(m)) =
        (y.transpose().array() * kernel.array() * k.array()).sum().real();
    left = (left * prop.slices[m]).eval();
  }
  return grad;
}

}  // namespace

FidelityGradient gradient_f1(const ControlProblem& problem,
                             const PulseSequence& pulse,
                             const DenseOperator& target_full) {
  if (target_full.rows() != problem.dim() ||
      target_full.cols() != problem.dim()) {
    throw DimensionMismatch("gradient_f1: target dimension mismatch");
  }
  const Propagation prop = propagate(problem, pulse);
  const Complex overlap = hs_inner(target_full, prop.total);
  const double d = static_cast<double>(problem.dim());
  FidelityGradient out;
  out.value = std::min(1.0, std::norm(overlap) / (d * d));
  // d|g|^2 = 2 Re(conj(g) dg), dg = tr(G^dagger dU): weight A = g G.
  out.gradient = weighted_gradient(problem, pulse, prop, overlap * target_full,
                                   out.degenerate_pairs);
  out.gradient *= 2.0 / (d * d);
  return out;
}

FidelityGradient gradient_f2(const ControlProblem& problem,
                             const PulseSequence& pulse,
                             const DenseOperator& target_central) {
  const Propagation prop = propagate(problem, pulse);
  const DenseOperator q = central_overlap(prop.total, target_central);
  const PolarDecomposition pd = polar(q);
  const double d = static_cast<double>(problem.dim());
  FidelityGradient out;
  out.value = pd.trace_norm / d;
  // d||Q||_1 = Re tr(W^dagger dQ) = Re tr((G (x) W)^dagger dU).
  out.gradient = weighted_gradient(problem, pulse, prop,
                                   kron(target_central, pd.unitary),
                                   out.degenerate_pairs);
  out.gradient /= d;
  return out;
}

FidelityGradient evaluate(const ControlProblem& problem,
                          const PulseSequence& pulse, const TargetGate& target,
                          FidelityKind kind) {
  if (kind == FidelityKind::f1) {
    return gradient_f1(problem, pulse, target.full(problem.n_bath()));
  }
  return gradient_f2(problem, pulse, target.central);
}

double fidelity(const DenseOperator& u, const TargetGate& target,
                FidelityKind kind, int n_bath) {
  if (kind == FidelityKind::f1) return fidelity_f1(u, target.full(n_bath));
  return fidelity_f2(u, target.central, n_bath);
}

double OptimizationRun::mean_fidelity() const {
  if (restarts.empty()) return best_fidelity;
  double sum = 0.0;
  for (const auto& r : restarts) sum += r.final_fidelity;
  return sum / static_cast<double>(restarts.size());
}

PulseSequence random_pulse(std::size_t slices, double dt, double scale,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  PulseSequence pulse;
  pulse.dt = dt;
  pulse.amplitudes.resize(slices);
  for (auto& b : pulse.amplitudes) b = dist(rng);
  return pulse;
}

OptimizationRun optimize(const ControlProblem& problem, const TargetGate& target,
                         double tau, const GrapeConfig& config) {
  if (config.restarts < 1) throw ConfigError("restarts must be at least 1");
  const std::size_t m_count = slice_count(tau, config.dt);
  OptimizationRun run;
  run.tau = tau;
  run.best_pulse.dt = config.dt;
  if (m_count == 0) {
    const DenseOperator identity =
        DenseOperator::Identity(problem.dim(), problem.dim());
    run.best_fidelity =
        fidelity(identity, target, config.fidelity, problem.n_bath());
    return run;
  }

  run.restarts.resize(static_cast<std::size_t>(config.restarts));
  std::vector<PulseSequence> finals(run.restarts.size());
  parallel_for(run.restarts.size(), config.threads, [&](std::size_t r) {
    RestartRecord& record = run.restarts[r];
    record.seed = derive_seed(config.seed, r);
    PulseSequence pulse =
        random_pulse(m_count, config.dt, config.initial_scale, record.seed);
    const Objective objective = [&](const RealVector& x, RealVector& grad) {
      PulseSequence trial;
      trial.dt = config.dt;
      trial.amplitudes.assign(x.data(), x.data() + x.size());
      FidelityGradient fg = evaluate(problem, trial, target, config.fidelity);
      grad = std::move(fg.gradient);
      return fg.value;
    };
    const RealVector x0 = Eigen::Map<const RealVector>(
        pulse.amplitudes.data(), static_cast<Index>(pulse.amplitudes.size()));
    LbfgsResult result =
        maximize(objective, x0, config.optimizer, config.record_trace);
    record.initial_fidelity = result.initial_value;
    record.final_fidelity = result.value;
    record.iterations = result.iterations;
    record.reason = result.reason;
    record.trace = std::move(result.trace);
    pulse.amplitudes.assign(result.x.data(), result.x.data() + result.x.size());
    finals[r] = std::move(pulse);
  });

  // Ordered reduction: ties go to the lowest restart index.
  for (std::size_t r = 0; r < run.restarts.size(); ++r) {
    if (r == 0 || run.restarts[r].final_fidelity > run.best_fidelity) {
      run.best_fidelity = run.restarts[r].final_fidelity;
      run.best_restart = r;
    }
  }
  run.best_pulse = std::move(finals[run.best_restart]);
  return run;
}

OptimizationRun optimize(const SpinStarSystem& sys, const TargetGate& target,
                         double tau, const GrapeConfig& config) {
  return optimize(ControlProblem(sys), target, tau, config);
}

}  // namespace spinstar

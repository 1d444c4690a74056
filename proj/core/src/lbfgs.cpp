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

#include "spinstar/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace spinstar {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::gradient_tolerance:
      return "gradient_tolerance";
    case StopReason::max_iterations:
      return "max_iterations";
    case StopReason::line_search_failed:
      return "line_search_failed";
    case StopReason::value_target:
      return "value_target";
  }
  return "unknown";
}

namespace {

struct CurvaturePair {
  RealVector s;
  RealVector y;  // change of the ascent gradient, sign flipped
  double rho;
};

class Box {
 public:
  explicit Box(std::optional<double> bound) : bound_(bound) {}

  void project(RealVector& x) const {
    if (bound_) x = x.cwiseMax(-*bound_).cwiseMin(*bound_);
  }

  /// Zeroes components of `d` that would push an active variable outward.
  void restrict(const RealVector& x, RealVector& d) const {
    if (!bound_) return;
    for (Index i = 0; i < x.size(); ++i) {
      if ((x(i) >= *bound_ && d(i) > 0.0) || (x(i) <= -*bound_ && d(i) < 0.0)) {
        d(i) = 0.0;
      }
    }
  }

 private:
  std::optional<double> bound_;
};

RealVector two_loop(const std::deque<CurvaturePair>& pairs,
                    const RealVector& gradient) {
  RealVector q = gradient;
  std::vector<double> alpha(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    alpha[i] = pairs[i].rho * pairs[i].s.dot(q);
    q -= alpha[i] * pairs[i].y;
  }
  if (!pairs.empty()) {
    const auto& last = pairs.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double beta = pairs[i].rho * pairs[i].y.dot(q);
    q += (alpha[i] - beta) * pairs[i].s;
  }
  return q;
}

}  // namespace

LbfgsResult maximize(const Objective& objective, RealVector x0,
                     const LbfgsOptions& options, bool record_trace) {
  const Box box(options.bound);
  LbfgsResult result;
  RealVector x = std::move(x0);
  box.project(x);
  RealVector g(x.size());
  double f = objective(x, g);
  result.evaluations = 1;
  result.initial_value = f;

  std::deque<CurvaturePair> pairs;
  auto projected_norm = [&](const RealVector& grad) {
    RealVector pg = grad;
    box.restrict(x, pg);
    return pg.size() == 0 ? 0.0 : pg.cwiseAbs().maxCoeff();
  };

  int iteration = 0;
  for (;; ++iteration) {
    const double gnorm = projected_norm(g);
    if (record_trace) result.trace.push_back({iteration, f, gnorm});
    if (options.value_target && f >= *options.value_target) {
      result.reason = StopReason::value_target;
      break;
    }
    if (gnorm <= options.gradient_tolerance) {
      result.reason = StopReason::gradient_tolerance;
      break;
    }
    if (iteration >= options.max_iterations) {
      result.reason = StopReason::max_iterations;
      break;
    }

    bool accepted = false;
    RealVector x_new, g_new(x.size());
    double f_new = f;
    // Quasi-Newton direction first, plain gradient as a fallback.
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool steepest = pairs.empty() || attempt == 1;
      RealVector d = steepest ? RealVector(g) : two_loop(pairs, g);
      box.restrict(x, d);
      double slope = g.dot(d);
      if (!(slope > 0.0)) {
        if (steepest) break;
        continue;
      }
      double step = 1.0;
      if (steepest) {
        pairs.clear();
        step = 1.0 / std::max(1.0, d.cwiseAbs().maxCoeff());
      }
      for (int k = 0; k < options.max_backtracks; ++k, step *= options.backtrack) {
        x_new = x + step * d;
        box.project(x_new);
        const RealVector delta = x_new - x;
        if (delta.cwiseAbs().maxCoeff() == 0.0) break;
        f_new = objective(x_new, g_new);
        ++result.evaluations;
        if (std::isfinite(f_new) && f_new > f &&
            f_new >= f + options.armijo * g.dot(delta)) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      result.reason = StopReason::line_search_failed;
      break;
    }

    CurvaturePair pair{x_new - x, g - g_new, 0.0};
    const double sy = pair.s.dot(pair.y);
    if (sy > 1e-12 * pair.s.norm() * pair.y.norm()) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > options.history) pairs.pop_front();
    }
    x = std::move(x_new);
    g = g_new;
    f = f_new;
  }

  result.x = std::move(x);
  result.value = f;
  result.iterations = iteration;
  return result;
}

}  // namespace spinstar

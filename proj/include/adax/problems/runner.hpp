// Copyright 2026 The adax Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADAX_PROBLEMS_RUNNER_HPP
#define ADAX_PROBLEMS_RUNNER_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <span>
#include <utility>

#include "adax/optim/projection.hpp"
#include "adax/optim/step.hpp"
#include "adax/oracle/diagnostics.hpp"
#include "adax/problems/online_problem.hpp"
#include "adax/problems/trajectory.hpp"

namespace adax {

struct RunSummary {
  std::size_t steps = 0;
  Vector final_x;
  OptimizerState state;
};

/**
 * Projected online loop: for t = 1..T evaluate the gradient of f_t at x_t,
 * take one optimizer step and project back into the problem's box.
 *
 * `visit(const TraceRecord&)` is called after every step. If it returns
 * bool, returning false stops the run early. Nothing is stored, so this is
 * the entry point for very long runs.
 */
template <typename Visitor>
RunSummary run_with(const OnlineProblem& problem, const OptimizerConfig& config,
                    std::span<const double> x0, std::size_t horizon,
                    Visitor&& visit) {
  config.validate();
  if (!problem.domain().contains(x0))
    throw DomainError("run: x0 outside the problem domain");

  RunSummary out;
  out.state = OptimizerState(problem.dim());
  Vector x(x0.begin(), x0.end());
  Vector prev_vhat(problem.dim(), 0.0);
  double prev_alpha = 0.0;

  TraceRecord rec;
  for (std::size_t t = 1; t <= horizon; ++t) {
    CostGrad cg = problem.cost_and_grad(t, x);
    StepResult res = apply_step(config, out.state, x, cg.grad);
    Vector x_next = project_box(res.x_raw, problem.domain(), res.step.vhat);

    rec.t = t;
    rec.cost = cg.cost;
    rec.alpha = res.alpha;
    rec.vhat_avg = oracle::avg_second_moment(res.step.vhat);
    if (t == 1) {
      double g = std::numeric_limits<double>::infinity();
      for (double v : res.step.vhat) g = std::min(g, std::sqrt(v) / res.alpha);
      rec.gamma_min = g;
    } else {
      rec.gamma_min = oracle::min_entry(oracle::gamma_diag(res.step.vhat, prev_vhat, res.alpha, prev_alpha));
    }
    prev_vhat = res.step.vhat;
    prev_alpha = res.alpha;

    rec.x = std::move(x);
    rec.grad = std::move(cg.grad);
    rec.step = std::move(res.step);
    rec.x_next = x_next;
    x = std::move(x_next);
    out.steps = t;

    if constexpr (std::same_as<std::invoke_result_t<Visitor&, const TraceRecord&>, bool>) {
      if (!visit(static_cast<const TraceRecord&>(rec))) break;
    } else {
      visit(static_cast<const TraceRecord&>(rec));
    }
  }
  out.final_x = std::move(x);
  return out;
}

/// Runs T steps and records every step.
inline Trajectory run(const OnlineProblem& problem, const OptimizerConfig& config,
                      std::span<const double> x0, std::size_t horizon) {
  Trajectory traj;
  traj.iterates.reserve(horizon);
  RunSummary s = run_with(problem, config, x0, horizon,
                          [&](const TraceRecord& r) { traj.push(r); });
  traj.final_x = std::move(s.final_x);
  return traj;
}

inline Trajectory run(const OnlineProblem& problem, const OptimizerConfig& config,
                      double x0, std::size_t horizon) {
  const double xs[1] = {x0};
  return run(problem, config, std::span<const double>(xs, 1), horizon);
}

}  // namespace adax

#endif  // ADAX_PROBLEMS_RUNNER_HPP

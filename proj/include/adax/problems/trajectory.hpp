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

#ifndef ADAX_PROBLEMS_TRAJECTORY_HPP
#define ADAX_PROBLEMS_TRAJECTORY_HPP

#include <cstddef>
#include <vector>

#include "adax/optim/step.hpp"

namespace adax {

/// Diagnostics of update t: gradient taken at x_t, the step, and x_{t+1}.
struct TraceRecord {
  std::size_t t = 0;
  Vector x;
  Vector grad;
  double cost = 0.0;
  double alpha = 0.0;
  UpdateStep step;
  Vector x_next;
  double vhat_avg = 0.0;
  // Smallest entry of sqrt(vhat_t)/alpha_t - sqrt(vhat_{t-1})/alpha_{t-1}.
  // For t = 1 the previous term is taken as 0.
  double gamma_min = 0.0;
};

/// Parallel sequences indexed by t - 1. iterates[t-1] is the point x_t where
/// f_t was evaluated; `final_x` is x_{T+1}.
struct Trajectory {
  std::vector<Vector> iterates;
  std::vector<Vector> gradients;
  std::vector<double> costs;
  std::vector<UpdateStep> steps;
  std::vector<double> vhat_avg;
  std::vector<double> gamma_min;
  Vector final_x;

  std::size_t size() const { return iterates.size(); }
  bool empty() const { return iterates.empty(); }

  void push(const TraceRecord& r) {
    iterates.push_back(r.x);
    gradients.push_back(r.grad);
    costs.push_back(r.cost);
    steps.push_back(r.step);
    vhat_avg.push_back(r.vhat_avg);
    gamma_min.push_back(r.gamma_min);
  }
};

}  // namespace adax

#endif  // ADAX_PROBLEMS_TRAJECTORY_HPP

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

#ifndef ADAX_ORACLE_SIMULATE_HPP
#define ADAX_ORACLE_SIMULATE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "adax/optim/step.hpp"

namespace adax::oracle {

/// Per-step record of a scalar optimizer driven by a fixed gradient sequence.
struct MomentTrace {
  Vector v;      // raw accumulator after step t
  Vector vhat;   // the estimate the method divides by
  Vector ratio;  // |delta_t| / alpha_t
  Vector alpha;
};

/// Feeds `grads` (g_1, g_2, ...) to a one-dimensional optimizer at x = 0 and
/// records the moments. With weight decay off the iterate never enters the
/// update, so this isolates the moment recursions.
inline MomentTrace trace_moments(const OptimizerConfig& config,
                                 std::span<const double> grads) {
  MomentTrace out;
  out.v.reserve(grads.size());
  out.vhat.reserve(grads.size());
  out.ratio.reserve(grads.size());
  out.alpha.reserve(grads.size());
  OptimizerState state(1);
  const double x[1] = {0.0};
  for (double g : grads) {
    const double gs[1] = {g};
    StepResult r = apply_step(config, state, x, gs);
    out.v.push_back(state.v[0]);
    out.vhat.push_back(r.step.vhat[0]);
    out.ratio.push_back(std::abs(r.step.delta[0]) / r.alpha);
    out.alpha.push_back(r.alpha);
  }
  return out;
}

/// g_t = C lambda^(t-1), t = 1..T: the decaying problem's gradients while
/// the iterate stays positive.
inline Vector decay_gradients(double c, double lambda, std::size_t horizon) {
  Vector g(horizon);
  for (std::size_t t = 1; t <= horizon; ++t)
    g[t - 1] = c * std::pow(lambda, static_cast<double>(t - 1));
  return g;
}

}  // namespace adax::oracle

#endif  // ADAX_ORACLE_SIMULATE_HPP

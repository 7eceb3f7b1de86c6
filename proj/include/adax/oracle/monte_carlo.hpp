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

#ifndef ADAX_ORACLE_MONTE_CARLO_HPP
#define ADAX_ORACLE_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "adax/errors.hpp"
#include "adax/optim/moments.hpp"
#include "adax/rng.hpp"

namespace adax::oracle {

struct MeanEstimate {
  double mean;
  double std_error;
};

/**
 * Monte-Carlo estimate of E[vhat_t] for AdaX under i.i.d. standard normal
 * gradients. An unbiased correction gives E[vhat_t] = E[g^2] = 1.
 *
 * Each trial runs the library's AdaX accumulator for t steps on a scalar
 * parameter, then applies adax_bias_correct.
 */
inline MeanEstimate mc_bias_check(std::size_t t, double beta2, std::size_t trials,
                                  std::uint64_t seed) {
  if (trials < 100) throw PreconditionError("mc_bias_check: need at least 100 trials");
  if (t == 0) throw PreconditionError("mc_bias_check: t must be >= 1");
  OptimizerConfig cfg = OptimizerConfig::defaults(Kind::AdaX);
  cfg.beta2 = beta2;

  Rng rng = make_rng(seed, Stream::MonteCarlo);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    OptimizerState state(1);
    double g[1];
    for (std::size_t s = 1; s <= t; ++s) {
      g[0] = normal(rng);
      second_moment(cfg, state, g, s, beta2);
    }
    const double vhat = state.v_normalized
                            ? state.v[0]
                            : adax_bias_correct(state.v, t, beta2, 0.0).vhat[0];
    sum += vhat;
    sum_sq += vhat * vhat;
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1.0);
  return {mean, std::sqrt(std::max(var, 0.0) / n)};
}

}  // namespace adax::oracle

#endif  // ADAX_ORACLE_MONTE_CARLO_HPP

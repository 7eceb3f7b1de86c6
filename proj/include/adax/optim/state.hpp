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

#ifndef ADAX_OPTIM_STATE_HPP
#define ADAX_OPTIM_STATE_HPP

#include <cstddef>

#include "adax/optim/config.hpp"

namespace adax {

/**
 * Per-parameter accumulators of one optimizer run.
 *
 * `t` counts completed updates; the first call to apply_step performs update
 * t = 1. `v_max` is only maintained by AMSGrad and Padam.
 *
 * For AdaX with a constant beta2 the raw accumulator grows like (1+beta2)^t
 * and eventually overflows. Once t*log1p(beta2) exceeds
 * kAdaxOverflowExponent the state switches to storing the bias-corrected
 * value directly in `v` and sets `v_normalized`.
 */
struct OptimizerState {
  std::size_t t = 0;
  std::size_t dim = 0;
  Vector m;
  Vector v;
  Vector v_max;
  // Running product of beta1_t, for Adam's first-moment correction.
  double beta1_product = 1.0;
  bool v_normalized = false;

  OptimizerState() = default;
  explicit OptimizerState(std::size_t d)
      : dim(d), m(d, 0.0), v(d, 0.0), v_max(d, 0.0) {}
};

inline constexpr double kAdaxOverflowExponent = 700.0;

}  // namespace adax

#endif  // ADAX_OPTIM_STATE_HPP

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

#ifndef ADAX_OPTIM_STEP_HPP
#define ADAX_OPTIM_STEP_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>

#include "adax/errors.hpp"
#include "adax/optim/config.hpp"
#include "adax/optim/moments.hpp"
#include "adax/optim/schedules.hpp"
#include "adax/optim/state.hpp"

namespace adax {

/**
 * What one update did.
 *
 * `delta` is x_raw - x (before projection). `vhat` is the second-moment
 * estimate the method divides by: v / (1 - beta2^t) for Adam, v_max for
 * AMSGrad and Padam, v / ((1+beta2)^t - 1) for AdaX and Padax, v itself for
 * AdaGrad and RMSProp, and all ones for SGD and SGDM. `denom` is the divisor
 * actually applied, including epsilon and the power.
 */
struct UpdateStep {
  Vector delta;
  Vector vhat;
  Vector denom;
};

struct StepResult {
  Vector x_raw;
  UpdateStep step;
  double alpha = 0.0;
};

/**
 * Performs update t = state.t + 1 of the generic adaptive method.
 *
 * 1. L2 mode adds weight_decay * x to the gradient.
 * 2. The moments advance according to `config.kind`.
 * 3. Adam corrects both moments (eps after the square root). AdaX corrects the
 *    second moment only, with eps added before dividing by the square-rooted
 *    correction. AMSGrad divides by sqrt(v_max) + eps without correction.
 *    Padam and Padax use v_max^p + eps and vhat^p + eps.
 * 4. Decoupled mode additionally subtracts alpha_t * weight_decay * x.
 *
 * `state` is advanced in place. The returned x_raw is not projected.
 */
inline StepResult apply_step(const OptimizerConfig& config,
                             OptimizerState& state, std::span<const double> x,
                             std::span<const double> g) {
  detail::require_same_length(x.size(), g.size(), "apply_step");
  detail::require_same_length(x.size(), state.dim, "apply_step");
  const std::size_t d = x.size();
  const std::size_t t = state.t + 1;

  for (std::size_t i = 0; i < d; ++i) {
    if (!std::isfinite(g[i]))
      throw NumericError(t, "non-finite gradient at coordinate " + std::to_string(i));
  }

  const ScheduleValues sched = schedules(config, t);
  const bool l2 = config.decay_mode == DecayMode::L2 && config.weight_decay != 0.0;
  Vector g_eff(g.begin(), g.end());
  if (l2) {
    for (std::size_t i = 0; i < d; ++i) g_eff[i] += config.weight_decay * x[i];
  }

  state.m = first_moment(state.m, g_eff, sched.beta1,
                         config.kind == Kind::Sgdm ? MomentumForm::HeavyBall
                                                   : MomentumForm::Ema);
  state.beta1_product *= sched.beta1;
  second_moment(config, state, g_eff, t, sched.beta2);

  UpdateStep step{Vector(d), Vector(d), Vector(d)};
  double m_scale = 1.0;
  switch (config.kind) {
    case Kind::Sgd:
    case Kind::Sgdm:
      step.vhat.assign(d, 1.0);
      step.denom.assign(d, 1.0);
      break;
    case Kind::AdaGrad:
    case Kind::RmsProp:
      for (std::size_t i = 0; i < d; ++i) {
        step.vhat[i] = state.v[i];
        step.denom[i] = std::sqrt(state.v[i]) + config.epsilon;
      }
      break;
    case Kind::Adam: {
      // 1 - beta2^t via expm1 keeps precision for beta2 close to 1.
      const double v_corr = -std::expm1(static_cast<double>(t) * std::log(sched.beta2));
      m_scale = 1.0 / (1.0 - state.beta1_product);
      for (std::size_t i = 0; i < d; ++i) {
        step.vhat[i] = state.v[i] / v_corr;
        step.denom[i] = std::sqrt(step.vhat[i]) + config.epsilon;
      }
      break;
    }
    case Kind::AmsGrad:
      for (std::size_t i = 0; i < d; ++i) {
        step.vhat[i] = state.v_max[i];
        step.denom[i] = std::sqrt(state.v_max[i]) + config.epsilon;
      }
      break;
    case Kind::Padam:
      for (std::size_t i = 0; i < d; ++i) {
        step.vhat[i] = state.v_max[i];
        step.denom[i] = std::pow(state.v_max[i], config.power) + config.epsilon;
      }
      break;
    case Kind::AdaX:
    case Kind::Padax: {
      BiasCorrected bc =
          state.v_normalized
              ? adax_bias_correct_normalized(state.v, t, sched.beta2, config.epsilon)
              : adax_bias_correct(state.v, t, sched.beta2, config.epsilon);
      step.vhat = std::move(bc.vhat);
      if (config.kind == Kind::AdaX) {
        step.denom = std::move(bc.denom);
      } else {
        for (std::size_t i = 0; i < d; ++i)
          step.denom[i] = std::pow(step.vhat[i], config.power) + config.epsilon;
      }
      break;
    }
  }

  const bool decoupled =
      config.decay_mode == DecayMode::Decoupled && config.weight_decay != 0.0;
  StepResult out;
  out.alpha = sched.alpha;
  out.x_raw.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double num = m_scale * state.m[i];
    double ratio = 0.0;
    if (step.denom[i] != 0.0) {
      ratio = num / step.denom[i];
    } else if (num != 0.0) {
      throw NumericError(t, "zero denominator with nonzero first moment at coordinate " +
                                std::to_string(i));
    }
    double delta = -sched.alpha * ratio;
    if (decoupled) delta -= sched.alpha * config.weight_decay * x[i];
    if (!std::isfinite(delta))
      throw NumericError(t, "non-finite update at coordinate " + std::to_string(i));
    step.delta[i] = delta;
    out.x_raw[i] = x[i] + delta;
  }
  out.step = std::move(step);
  state.t = t;
  return out;
}

/// Config plus state, for callers that drive one parameter vector.
class Optimizer {
 public:
  Optimizer(OptimizerConfig config, std::size_t dim)
      : config_(std::move(config)), state_(dim) {
    config_.validate();
  }

  StepResult step(std::span<const double> x, std::span<const double> g) {
    return apply_step(config_, state_, x, g);
  }

  const OptimizerConfig& config() const { return config_; }
  const OptimizerState& state() const { return state_; }

 private:
  OptimizerConfig config_;
  OptimizerState state_;
};

}  // namespace adax

#endif  // ADAX_OPTIM_STEP_HPP

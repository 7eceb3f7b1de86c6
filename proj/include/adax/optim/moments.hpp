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

#ifndef ADAX_OPTIM_MOMENTS_HPP
#define ADAX_OPTIM_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "adax/errors.hpp"
#include "adax/optim/config.hpp"
#include "adax/optim/schedules.hpp"
#include "adax/optim/state.hpp"

namespace adax {

namespace detail {

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(a) +
                         " != " + std::to_string(b));
  }
}

}  // namespace detail

enum class MomentumForm {
  Ema,        // beta1 * m + (1 - beta1) * g
  HeavyBall,  // gamma * m + g
};

inline Vector first_moment(std::span<const double> m_prev,
                           std::span<const double> g, double beta1_t,
                           MomentumForm form = MomentumForm::Ema) {
  detail::require_same_length(m_prev.size(), g.size(), "first_moment");
  Vector m(g.size());
  if (form == MomentumForm::HeavyBall) {
    for (std::size_t i = 0; i < g.size(); ++i) m[i] = beta1_t * m_prev[i] + g[i];
  } else {
    for (std::size_t i = 0; i < g.size(); ++i)
      m[i] = beta1_t * m_prev[i] + (1.0 - beta1_t) * g[i];
  }
  return m;
}

/// (1+beta2)^t - 1, evaluated as expm1(t*log1p(beta2)) and kept >= t*beta2.
/// Overflows to +inf once t*log1p(beta2) passes ~709.
inline double adax_correction(std::size_t t, double beta2) {
  const double td = static_cast<double>(t);
  const double s = std::expm1(td * std::log1p(beta2));
  return std::max(s, td * beta2);
}

/// 1 / ((1+beta2)^t - 1), finite for every t (tends to 0 instead of
/// overflowing).
inline double adax_inverse_correction(std::size_t t, double beta2) {
  const double e = static_cast<double>(t) * std::log1p(beta2);
  if (e <= kAdaxOverflowExponent) return 1.0 / adax_correction(t, beta2);
  return std::exp(-e) / -std::expm1(-e);
}

/**
 * Advances the second moment of `state` by one step and returns it.
 *
 * - AdaGrad keeps the running mean of g^2 (sum g_i^2 / t).
 * - RMSProp, Adam, AMSGrad, Padam keep beta2 * v + (1 - beta2) * g^2;
 *   AMSGrad and Padam also fold v into `state.v_max`.
 * - AdaX and Padax keep (1 + beta2_t) * v + beta2_t * g^2.
 * - SGD and SGDM leave v untouched.
 *
 * `beta2_t` is the scheduled coefficient for step t (see schedules()).
 */
inline const Vector& second_moment(const OptimizerConfig& config,
                                   OptimizerState& state,
                                   std::span<const double> g, std::size_t t,
                                   double beta2_t) {
  detail::require_same_length(state.v.size(), g.size(), "second_moment");
  if (t == 0) throw PreconditionError("second_moment: step index starts at 1");
  Vector& v = state.v;
  const std::size_t d = g.size();

  switch (config.kind) {
    case Kind::Sgd:
    case Kind::Sgdm:
      break;
    case Kind::AdaGrad: {
      const double inv_t = 1.0 / static_cast<double>(t);
      for (std::size_t i = 0; i < d; ++i) v[i] += (g[i] * g[i] - v[i]) * inv_t;
      break;
    }
    case Kind::RmsProp:
    case Kind::Adam:
    case Kind::AmsGrad:
    case Kind::Padam:
      for (std::size_t i = 0; i < d; ++i)
        v[i] = beta2_t * v[i] + (1.0 - beta2_t) * g[i] * g[i];
      if (config.kind == Kind::AmsGrad || config.kind == Kind::Padam) {
        state.v_max.resize(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
          state.v_max[i] = std::max(state.v_max[i], v[i]);
      }
      break;
    case Kind::AdaX:
    case Kind::Padax: {
      const double exponent = static_cast<double>(t) * std::log1p(beta2_t);
      if (!state.v_normalized && exponent > kAdaxOverflowExponent) {
        // Previous step still had a finite correction; rescale into vhat.
        const double prev = t > 1 ? adax_correction(t - 1, beta2_t) : 1.0;
        for (double& vi : v) vi /= prev;
        state.v_normalized = true;
      }
      if (state.v_normalized) {
        // vhat_t = vhat_{t-1} + (beta2 / S_t) (g^2 - vhat_{t-1})
        const double w = beta2_t * adax_inverse_correction(t, beta2_t);
        for (std::size_t i = 0; i < d; ++i) v[i] += w * (g[i] * g[i] - v[i]);
      } else {
        const double grow = 1.0 + beta2_t;
        for (std::size_t i = 0; i < d; ++i)
          v[i] = grow * v[i] + beta2_t * g[i] * g[i];
      }
      break;
    }
  }
  return v;
}

/// Overload that takes beta2_t from the configured schedule.
inline const Vector& second_moment(const OptimizerConfig& config,
                                   OptimizerState& state,
                                   std::span<const double> g, std::size_t t) {
  return second_moment(config, state, g, t, schedules(config, t).beta2);
}

struct BiasCorrected {
  Vector vhat;
  Vector denom;
};

/**
 * AdaX second-moment bias correction with the epsilon placement of the
 * reference implementation: the denominator is (sqrt(v) + eps) divided by
 * sqrt((1+beta2)^t - 1), so eps is added before the correction.
 */
inline BiasCorrected adax_bias_correct(std::span<const double> v, std::size_t t,
                                       double beta2, double epsilon) {
  if (t == 0) throw PreconditionError("adax_bias_correct: t must be >= 1");
  if (!(beta2 > 0.0)) throw PreconditionError("adax_bias_correct: beta2 must be > 0");
  const double s = adax_correction(t, beta2);
  const double root_s = std::sqrt(s);
  BiasCorrected out{Vector(v.size()), Vector(v.size())};
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.vhat[i] = v[i] / s;
    out.denom[i] = (std::sqrt(v[i]) + epsilon) / root_s;
  }
  return out;
}

/// Same quantities when `vhat` already holds v / ((1+beta2)^t - 1).
inline BiasCorrected adax_bias_correct_normalized(std::span<const double> vhat,
                                                  std::size_t t, double beta2,
                                                  double epsilon) {
  const double eps_scaled = epsilon * std::sqrt(adax_inverse_correction(t, beta2));
  BiasCorrected out{Vector(vhat.begin(), vhat.end()), Vector(vhat.size())};
  for (std::size_t i = 0; i < vhat.size(); ++i)
    out.denom[i] = std::sqrt(vhat[i]) + eps_scaled;
  return out;
}

}  // namespace adax

#endif  // ADAX_OPTIM_MOMENTS_HPP

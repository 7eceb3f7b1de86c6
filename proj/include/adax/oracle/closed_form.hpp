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

#ifndef ADAX_ORACLE_CLOSED_FORM_HPP
#define ADAX_ORACLE_CLOSED_FORM_HPP

// Closed-form second moments and step bounds for the decaying-gradient
// problem with gradients g_t = C lambda^(t-1) (iterate kept positive).

#include <cmath>
#include <cstddef>

#include "adax/errors.hpp"

namespace adax::oracle {

/// Uncorrected Adam/RMSProp accumulator after t steps:
/// (1-beta2) C^2 (lambda^(2t) - beta2^t) / (lambda^2 - beta2).
inline double adam_vt_closed(std::size_t t, double c, double lambda, double beta2) {
  if (t == 0) throw PreconditionError("adam_vt_closed: t must be >= 1");
  const double l2 = lambda * lambda;
  if (l2 == beta2) throw DomainError("adam_vt_closed: singular at beta2 == lambda^2");
  const double td = static_cast<double>(t);
  const double num = std::pow(l2, td) - std::pow(beta2, td);
  return (1.0 - beta2) * c * c * num / (l2 - beta2);
}

/// Lower bound on Adam's |step| / alpha_t: sqrt((lambda^2-beta2)/(lambda^2(1-beta2))).
inline double adam_step_lower_bound(double beta2, double lambda) {
  const double l2 = lambda * lambda;
  if (!(beta2 < l2)) throw DomainError("adam_step_lower_bound: requires beta2 < lambda^2");
  return std::sqrt((l2 - beta2) / (l2 * (1.0 - beta2)));
}

/**
 * Bias-corrected AdaX second moment after t steps:
 * beta2 C^2 / (1+beta2-lambda^2) * ((1+beta2)^t - lambda^(2t)) / ((1+beta2)^t - 1).
 *
 * The ratio is evaluated as (1 - (lambda^2/(1+beta2))^t) / (1 - (1+beta2)^-t)
 * so it neither overflows nor cancels for large t.
 */
inline double adax_vhat_closed(std::size_t t, double c, double lambda, double beta2) {
  if (t == 0) throw PreconditionError("adax_vhat_closed: t must be >= 1");
  const double td = static_cast<double>(t);
  const double lg = std::log1p(beta2);
  const double gap = (1.0 - lambda) * (1.0 + lambda) + beta2;  // 1 + beta2 - lambda^2
  const double num = -std::expm1(td * (2.0 * std::log(lambda) - lg));
  const double den = -std::expm1(-td * lg);
  return beta2 * c * c / gap * (num / den);
}

/// Upper bound on AdaX's g_t / sqrt(vhat_t) relative to lambda^(t-1).
inline double adax_ratio_bound(double beta2, double lambda) {
  const double gap = (1.0 - lambda) * (1.0 + lambda) + beta2;
  return std::sqrt(gap / beta2);
}

/// Stationary time of lambda^(2t) - beta2^t, the step at which Adam's
/// accumulator peaks: ln(ln beta2 / ln lambda^2) / ln(lambda^2 / beta2).
inline double amsgrad_tmax(double beta2, double lambda) {
  if (!(std::sqrt(beta2) < lambda && lambda < 1.0))
    throw DomainError("amsgrad_tmax: requires sqrt(beta2) < lambda < 1");
  const double log_l2 = 2.0 * std::log(lambda);
  const double log_b2 = std::log(beta2);
  return std::log(log_b2 / log_l2) / (log_l2 - log_b2);
}

}  // namespace adax::oracle

#endif  // ADAX_ORACLE_CLOSED_FORM_HPP

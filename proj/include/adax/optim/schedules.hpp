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

#ifndef ADAX_OPTIM_SCHEDULES_HPP
#define ADAX_OPTIM_SCHEDULES_HPP

#include <cmath>
#include <cstddef>

#include "adax/errors.hpp"
#include "adax/optim/config.hpp"

namespace adax {

struct ScheduleValues {
  double alpha;
  double beta1;
  double beta2;
};

/// Step size and moment coefficients in effect at update t (t >= 1).
inline ScheduleValues schedules(const OptimizerConfig& config, std::size_t t) {
  if (t == 0) throw PreconditionError("schedules: step index starts at 1");
  const double td = static_cast<double>(t);

  ScheduleValues s{};
  s.alpha = config.step.type == StepSchedule::Type::InvSqrt
                ? config.step.alpha / std::sqrt(td)
                : config.step.alpha;
  s.beta1 = config.beta1_schedule.type == Beta1Schedule::Type::GeometricDecay
                ? config.beta1 * std::pow(config.beta1_schedule.decay, td - 1.0)
                : config.beta1;
  s.beta2 = config.beta2_schedule == Beta2Schedule::InvTime ? config.beta2 / td
                                                            : config.beta2;
  return s;
}

}  // namespace adax

#endif  // ADAX_OPTIM_SCHEDULES_HPP

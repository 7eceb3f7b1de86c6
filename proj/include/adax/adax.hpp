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

#ifndef ADAX_ADAX_HPP
#define ADAX_ADAX_HPP

#include "adax/errors.hpp"
#include "adax/format.hpp"
#include "adax/rng.hpp"

#include "adax/optim/config.hpp"
#include "adax/optim/moments.hpp"
#include "adax/optim/projection.hpp"
#include "adax/optim/schedules.hpp"
#include "adax/optim/state.hpp"
#include "adax/optim/step.hpp"

#include "adax/problems/online_problem.hpp"
#include "adax/problems/regret.hpp"
#include "adax/problems/runner.hpp"
#include "adax/problems/trajectory.hpp"

#include "adax/oracle/closed_form.hpp"
#include "adax/oracle/diagnostics.hpp"
#include "adax/oracle/monte_carlo.hpp"
#include "adax/oracle/simulate.hpp"

#include "adax/nn/dataset.hpp"
#include "adax/nn/mlp.hpp"
#include "adax/nn/train.hpp"

#endif  // ADAX_ADAX_HPP

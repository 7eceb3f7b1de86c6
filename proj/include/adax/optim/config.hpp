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

#ifndef ADAX_OPTIM_CONFIG_HPP
#define ADAX_OPTIM_CONFIG_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adax/errors.hpp"
#include "adax/format.hpp"

namespace adax {

using Vector = std::vector<double>;

enum class Kind { Sgd, Sgdm, AdaGrad, RmsProp, Adam, AmsGrad, AdaX, Padam, Padax };

enum class DecayMode { None, L2, Decoupled };

enum class Beta2Schedule { Constant, InvTime };

struct StepSchedule {
  enum class Type { Constant, InvSqrt };
  Type type = Type::Constant;
  double alpha = 1e-3;

  static StepSchedule constant(double a) { return {Type::Constant, a}; }
  static StepSchedule inv_sqrt(double a) { return {Type::InvSqrt, a}; }
};

/// beta1_t = beta1 (Constant) or beta1 * decay^(t-1) (GeometricDecay).
struct Beta1Schedule {
  enum class Type { Constant, GeometricDecay };
  Type type = Type::Constant;
  double decay = 1.0;

  static Beta1Schedule constant() { return {}; }
  static Beta1Schedule geometric(double lambda) {
    return {Type::GeometricDecay, lambda};
  }
};

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Sgd: return "sgd";
    case Kind::Sgdm: return "sgdm";
    case Kind::AdaGrad: return "adagrad";
    case Kind::RmsProp: return "rmsprop";
    case Kind::Adam: return "adam";
    case Kind::AmsGrad: return "amsgrad";
    case Kind::AdaX: return "adax";
    case Kind::Padam: return "padam";
    case Kind::Padax: return "padax";
  }
  return "?";
}

inline std::string_view to_string(DecayMode d) {
  switch (d) {
    case DecayMode::None: return "none";
    case DecayMode::L2: return "l2";
    case DecayMode::Decoupled: return "decoupled";
  }
  return "?";
}

inline std::optional<Kind> parse_kind(std::string_view s) {
  for (Kind k : {Kind::Sgd, Kind::Sgdm, Kind::AdaGrad, Kind::RmsProp,
                 Kind::Adam, Kind::AmsGrad, Kind::AdaX, Kind::Padam,
                 Kind::Padax}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// True for the methods whose second moment is an exponential moving average
/// and therefore requires beta2 < 1.
inline bool uses_ema_second_moment(Kind k) {
  return k == Kind::RmsProp || k == Kind::Adam || k == Kind::AmsGrad ||
         k == Kind::Padam;
}

inline bool is_adax_family(Kind k) { return k == Kind::AdaX || k == Kind::Padax; }

/// Methods with a non-identity second moment.
inline bool is_adaptive(Kind k) { return k != Kind::Sgd && k != Kind::Sgdm; }

/**
 * Hyperparameters for one optimizer run.
 *
 * For `Kind::Sgdm`, `beta1` holds the heavy-ball momentum gamma and the first
 * moment is `gamma * m + g` rather than the exponential average. `power` is
 * only read by Padam and Padax. `weight_decay` is applied according to
 * `decay_mode`: added to the gradient (L2) or subtracted from the iterate
 * scaled by the step size (Decoupled).
 */
struct OptimizerConfig {
  Kind kind = Kind::AdaX;
  double beta1 = 0.9;
  double beta2 = 1e-4;
  double epsilon = 1e-12;
  double power = 0.125;
  double weight_decay = 0.0;
  DecayMode decay_mode = DecayMode::None;
  StepSchedule step = StepSchedule::constant(5e-3);
  Beta1Schedule beta1_schedule = Beta1Schedule::constant();
  Beta2Schedule beta2_schedule = Beta2Schedule::Constant;

  /// Library defaults per method. Step sizes follow common practice for each
  /// family (0.1 for SGD(M), 1e-3 for Adam-type, 5e-3 for AdaX).
  static OptimizerConfig defaults(Kind k) {
    OptimizerConfig c;
    c.kind = k;
    switch (k) {
      case Kind::Sgd:
        c.beta1 = 0.0;
        c.beta2 = 0.999;
        c.epsilon = 0.0;
        c.step = StepSchedule::constant(0.1);
        break;
      case Kind::Sgdm:
        c.beta1 = 0.9;
        c.beta2 = 0.999;
        c.epsilon = 0.0;
        c.step = StepSchedule::constant(0.01);
        break;
      case Kind::AdaGrad:
        c.beta1 = 0.0;
        c.beta2 = 0.999;
        c.epsilon = 1e-8;
        c.step = StepSchedule::constant(1e-2);
        break;
      case Kind::RmsProp:
        c.beta1 = 0.0;
        c.beta2 = 0.99;
        c.epsilon = 1e-8;
        c.step = StepSchedule::constant(1e-3);
        break;
      case Kind::Adam:
      case Kind::AmsGrad:
        c.beta1 = 0.9;
        c.beta2 = 0.999;
        c.epsilon = 1e-8;
        c.step = StepSchedule::constant(1e-3);
        break;
      case Kind::Padam:
        c.beta1 = 0.9;
        c.beta2 = 0.999;
        c.epsilon = 1e-8;
        c.step = StepSchedule::constant(1e-2);
        break;
      case Kind::AdaX:
        c.beta1 = 0.9;
        c.beta2 = 1e-4;
        c.epsilon = 1e-12;
        c.step = StepSchedule::constant(5e-3);
        break;
      case Kind::Padax:
        c.beta1 = 0.9;
        c.beta2 = 1e-4;
        c.epsilon = 1e-12;
        c.step = StepSchedule::constant(1e-2);
        break;
    }
    return c;
  }

  /// Throws ConfigError naming the first field that breaks an invariant.
  void validate() const {
    // Written as !(ok) so NaN is rejected too.
    if (!(beta1 >= 0.0 && beta1 < 1.0))
      throw ConfigError("beta1", "must lie in [0, 1)");
    if (!(beta2 > 0.0) || !std::isfinite(beta2))
      throw ConfigError("beta2", "must be positive");
    if (uses_ema_second_moment(kind) && !(beta2 < 1.0))
      throw ConfigError("beta2", "must be < 1 for " +
                                     std::string(to_string(kind)));
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
      throw ConfigError("epsilon", "must be >= 0");
    if (!(power > 0.0 && power <= 0.5))
      throw ConfigError("power", "must lie in (0, 1/2]");
    if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay))
      throw ConfigError("weight_decay", "must be >= 0");
    if (!(step.alpha > 0.0) || !std::isfinite(step.alpha))
      throw ConfigError("alpha", "must be positive");
    if (beta1_schedule.type == Beta1Schedule::Type::GeometricDecay &&
        !(beta1_schedule.decay > 0.0 && beta1_schedule.decay <= 1.0))
      throw ConfigError("beta1_decay", "must lie in (0, 1]");
    if (beta2_schedule == Beta2Schedule::InvTime && kind != Kind::AdaX)
      throw ConfigError("beta2_schedule",
                        "inverse-time schedule is only defined for adax");
  }
};

/// Effective settings as ordered key/value pairs, for provenance headers.
inline std::vector<std::pair<std::string, std::string>> config_entries(
    const OptimizerConfig& c) {
  const bool inv_sqrt = c.step.type == StepSchedule::Type::InvSqrt;
  const bool geometric = c.beta1_schedule.type == Beta1Schedule::Type::GeometricDecay;
  std::vector<std::pair<std::string, std::string>> out = {
      {"kind", std::string(to_string(c.kind))},
      {"alpha", format_double(c.step.alpha)},
      {"step_schedule", inv_sqrt ? "invsqrt" : "constant"},
      {"beta1", format_double(c.beta1)},
      {"beta1_schedule", geometric ? "geometric" : "constant"},
      {"beta2", format_double(c.beta2)},
      {"beta2_schedule",
       c.beta2_schedule == Beta2Schedule::InvTime ? "invtime" : "constant"},
      {"epsilon", format_double(c.epsilon)},
      {"power", format_double(c.power)},
      {"weight_decay", format_double(c.weight_decay)},
      {"decay_mode", std::string(to_string(c.decay_mode))},
  };
  if (geometric) out.emplace_back("beta1_decay", format_double(c.beta1_schedule.decay));
  return out;
}

}  // namespace adax

#endif  // ADAX_OPTIM_CONFIG_HPP

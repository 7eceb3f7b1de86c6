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

#ifndef ADAX_CLI_RUN_CONFIG_HPP
#define ADAX_CLI_RUN_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "adax/errors.hpp"
#include "adax/format.hpp"
#include "adax/optim/config.hpp"
#include "adax/problems/online_problem.hpp"

namespace adax::cli {

enum class Command { Synthetic, Regret, Train, Diag };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::Synthetic: return "synthetic";
    case Command::Regret: return "regret";
    case Command::Train: return "train";
    case Command::Diag: return "diag";
  }
  return "?";
}

/// Bad flag, bad key or out-of-range value. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Thrown by parse_args for --help; carries the rendered usage text.
struct HelpRequested {
  std::string text;
};

/// Hyperparameters given explicitly on the command line or in a config file.
/// Anything left empty falls back to the per-method default.
struct Overrides {
  std::optional<double> alpha;
  std::optional<double> beta1;
  std::optional<double> beta2;
  std::optional<double> epsilon;
  std::optional<double> power;
  std::optional<double> weight_decay;
  std::optional<double> beta1_decay;
  std::optional<DecayMode> decay_mode;
  std::optional<StepSchedule::Type> schedule;
  std::optional<Beta2Schedule> beta2_schedule;
};

struct OptimizerChoice {
  std::string name;
  OptimizerConfig config;
};

namespace detail {

inline std::string flag_for_field(const std::string& field) {
  if (field == "epsilon") return "--eps";
  if (field == "power") return "--p";
  if (field == "weight_decay") return "--wd";
  if (field == "beta1_decay") return "--beta1-decay";
  if (field == "beta2_schedule") return "--beta2-schedule";
  return "--" + field;
}

}  // namespace detail

/**
 * Builds the optimizer for a method name. A trailing "w" on an adaptive
 * method (adamw, adaxw, amsgradw, ...) selects decoupled weight decay; its
 * default decay is 5e-2 for the AdaX family and 1e-1 otherwise.
 */
inline OptimizerChoice resolve_optimizer(std::string_view name, const Overrides& o,
                                         StepSchedule::Type default_schedule) {
  std::optional<Kind> kind = parse_kind(name);
  bool decoupled = false;
  if (!kind && name.size() > 1 && name.back() == 'w') {
    kind = parse_kind(name.substr(0, name.size() - 1));
    decoupled = kind && is_adaptive(*kind);
    if (!decoupled) kind.reset();
  }
  if (!kind) throw UsageError("--opt: unknown optimizer '" + std::string(name) + "'");

  OptimizerConfig c = OptimizerConfig::defaults(*kind);
  c.step.type = o.schedule.value_or(default_schedule);
  if (o.alpha) c.step.alpha = *o.alpha;
  if (o.beta1) c.beta1 = *o.beta1;
  if (o.beta2) c.beta2 = *o.beta2;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.power) c.power = *o.power;
  if (o.beta1_decay) c.beta1_schedule = Beta1Schedule::geometric(*o.beta1_decay);
  if (o.beta2_schedule) c.beta2_schedule = *o.beta2_schedule;
  if (decoupled) {
    if (o.decay_mode && *o.decay_mode != DecayMode::Decoupled)
      throw UsageError("--decay-mode: conflicts with optimizer '" + std::string(name) + "'");
    c.decay_mode = DecayMode::Decoupled;
    c.weight_decay = o.weight_decay.value_or(is_adax_family(*kind) ? 5e-2 : 1e-1);
  } else {
    c.decay_mode = o.decay_mode.value_or(DecayMode::None);
    c.weight_decay = o.weight_decay.value_or(0.0);
    if (c.weight_decay > 0.0 && c.decay_mode == DecayMode::None) c.decay_mode = DecayMode::L2;
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    std::string what = e.what();
    const std::string prefix = e.field() + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw UsageError(detail::flag_for_field(e.field()) + ": " + what + " (optimizer " +
                     std::string(name) + ")");
  }
  return {std::string(name), c};
}

/// Everything one invocation needs. Problem fields apply to synthetic and
/// regret, dataset fields to train.
struct RunConfig {
  Command command = Command::Synthetic;
  std::vector<OptimizerChoice> optimizers;

  std::string problem = "decay";
  double c = 1e-3;
  double lambda = 0.9999;
  std::size_t decay_n = 1;
  double x0 = 1.0;
  std::size_t horizon = 10000;
  std::size_t every = 1;

  std::size_t epochs = 30;
  std::size_t batch = 32;
  std::size_t hidden = 32;
  std::size_t samples = 3000;
  std::size_t features = 20;
  std::size_t classes = 3;
  double spread = 1.0;
  std::string data;

  std::uint64_t seed = 0;
  std::string out = "results";
  std::size_t jobs = 1;

  OnlineProblem make_problem() const {
    if (problem == "reddi") return OnlineProblem::reddi(c);
    return OnlineProblem::decay(c, lambda, decay_n);
  }

  /// Run-level settings echoed at the top of every CSV.
  std::vector<std::pair<std::string, std::string>> entries() const {
    std::vector<std::pair<std::string, std::string>> e = {
        {"command", std::string(to_string(command))}};
    switch (command) {
      case Command::Synthetic:
      case Command::Regret:
        e.emplace_back("problem", problem);
        e.emplace_back("C", format_double(c));
        if (problem == "decay") {
          e.emplace_back("lambda", format_double(lambda));
          e.emplace_back("decay_n", std::to_string(decay_n));
        }
        e.emplace_back("x0", format_double(x0));
        e.emplace_back("T", std::to_string(horizon));
        e.emplace_back("every", std::to_string(every));
        break;
      case Command::Train:
        e.emplace_back("epochs", std::to_string(epochs));
        e.emplace_back("batch", std::to_string(batch));
        e.emplace_back("hidden", std::to_string(hidden));
        if (data.empty()) {
          e.emplace_back("n", std::to_string(samples));
          e.emplace_back("d", std::to_string(features));
          e.emplace_back("k", std::to_string(classes));
          e.emplace_back("spread", format_double(spread));
        } else {
          e.emplace_back("data", data);
        }
        e.emplace_back("every", std::to_string(every));
        break;
      case Command::Diag:
        e.emplace_back("C", format_double(c));
        e.emplace_back("lambda", format_double(lambda));
        e.emplace_back("T", std::to_string(horizon));
        break;
    }
    e.emplace_back("seed", std::to_string(seed));
    return e;
  }
};

namespace detail {

// Counts accept integral scientific notation such as 1e5.
inline std::size_t to_count(const char* flag, double v, std::size_t min) {
  if (!(v >= static_cast<double>(min)) || v != std::floor(v) || v > 1e15)
    throw UsageError(std::string(flag) + ": expected an integer >= " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

inline std::vector<std::string> default_optimizers(Command c) {
  switch (c) {
    case Command::Synthetic: return {"adam", "adax"};
    case Command::Regret: return {"sgd", "adam", "adax"};
    case Command::Train: return {"sgdm", "adamw", "adaxw"};
    case Command::Diag: return {"adam", "adax"};
  }
  return {};
}

}  // namespace detail

/**
 * Parses `adax_cli <command> [flags]`.
 *
 * `--config FILE` reads `key = value` lines whose keys are the long flag
 * names without dashes; explicit flags win over file values and unknown
 * keys are rejected. Throws UsageError or HelpRequested.
 */
inline RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Adaptive optimizer experiments", "adax_cli"};
  app.set_config("--config", "", "Read key = value settings from FILE");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.option_defaults()->always_capture_default();

  std::string command;
  app.add_option("command", command, "synthetic | regret | train | diag")
      ->required()
      ->check(CLI::IsMember({"synthetic", "regret", "train", "diag"}));

  std::vector<std::string> opt_names;
  app.add_option("--opt", opt_names,
                 "Optimizers, comma separated: sgd sgdm adagrad rmsprop adam amsgrad "
                 "adax padam padax, or an adaptive name with a trailing w")
      ->delimiter(',')
      ->default_str("per command");

  double alpha = 0, beta1 = 0, beta2 = 0, eps = 0, power = 0, wd = 0, beta1_decay = 0;
  auto* o_alpha = app.add_option("--alpha", alpha, "Base step size")->default_str("per method");
  auto* o_beta1 = app.add_option("--beta1", beta1, "First-moment coefficient")->default_str("per method");
  auto* o_beta2 = app.add_option("--beta2", beta2, "Second-moment coefficient")->default_str("per method");
  auto* o_eps = app.add_option("--eps", eps, "Denominator epsilon")->default_str("per method");
  auto* o_p = app.add_option("--p", power, "Padam/Padax exponent")->default_str("per method");
  auto* o_wd = app.add_option("--wd", wd, "Weight decay")->default_str("0; 5e-2 adax*w, 1e-1 other *w");
  auto* o_b1d = app.add_option("--beta1-decay", beta1_decay, "beta1_t = beta1 * decay^(t-1)")->default_str("per method");
  std::string decay_mode, schedule, beta2_schedule;
  auto* o_mode = app.add_option("--decay-mode", decay_mode, "none | l2 | decoupled")
                     ->check(CLI::IsMember({"none", "l2", "decoupled"}));
  auto* o_sched = app.add_option("--schedule", schedule, "const | invsqrt")
                      ->check(CLI::IsMember({"const", "invsqrt"}));
  auto* o_b2s = app.add_option("--beta2-schedule", beta2_schedule, "const | invtime (adax only)")
                    ->check(CLI::IsMember({"const", "invtime"}));

  RunConfig rc;
  std::string problem;
  double c = 0, horizon = 10000, every = 0, decay_n = 1;
  double epochs = 30, batch = 32, hidden = 32, samples = 3000, features = 20, classes = 3;
  double jobs = 1;
  double x0 = 0;
  auto* o_problem = app.add_option("--problem", problem, "reddi | decay")
                        ->check(CLI::IsMember({"reddi", "decay"}));
  auto* o_c = app.add_option("--C", c, "Problem constant C")->default_str("3 reddi, 1e-3 decay");
  app.add_option("--lambda", rc.lambda, "Gradient decay rate of the decay problem");
  app.add_option("--decay-n", decay_n, "Steps before the decay problem's kink switches off");
  auto* o_x0 = app.add_option("--x0", x0, "Initial point")->default_str("0 reddi, 1 decay");
  app.add_option("--T", horizon, "Horizon");
  app.add_option("--every", every, "Record every N-th step")
      ->default_str("1, or ceil(T/1e5) above T = 1e5");
  app.add_option("--epochs", epochs, "Training epochs");
  app.add_option("--batch", batch, "Mini-batch size");
  app.add_option("--hidden", hidden, "Hidden units");
  app.add_option("--n", samples, "Synthetic samples");
  app.add_option("--d", features, "Synthetic features");
  app.add_option("--k", classes, "Synthetic classes");
  app.add_option("--spread", rc.spread, "Cluster standard deviation");
  app.add_option("--data", rc.data, "Train on this CSV instead of synthetic blobs");
  app.add_option("--seed", rc.seed, "Seed for every random stream");
  app.add_option("--out", rc.out, "Output directory, or a .csv path for a single run");
  app.add_option("--jobs", jobs, "Parallel runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (command == "synthetic") rc.command = Command::Synthetic;
  else if (command == "regret") rc.command = Command::Regret;
  else if (command == "train") rc.command = Command::Train;
  else rc.command = Command::Diag;

  Overrides ov;
  if (o_alpha->count()) ov.alpha = alpha;
  if (o_beta1->count()) ov.beta1 = beta1;
  if (o_beta2->count()) ov.beta2 = beta2;
  if (o_eps->count()) ov.epsilon = eps;
  if (o_p->count()) ov.power = power;
  if (o_wd->count()) ov.weight_decay = wd;
  if (o_b1d->count()) ov.beta1_decay = beta1_decay;
  if (o_mode->count()) {
    ov.decay_mode = decay_mode == "l2"          ? DecayMode::L2
                    : decay_mode == "decoupled" ? DecayMode::Decoupled
                                                : DecayMode::None;
  }
  if (o_sched->count())
    ov.schedule = schedule == "invsqrt" ? StepSchedule::Type::InvSqrt : StepSchedule::Type::Constant;
  if (o_b2s->count())
    ov.beta2_schedule = beta2_schedule == "invtime" ? Beta2Schedule::InvTime : Beta2Schedule::Constant;

  const StepSchedule::Type default_schedule =
      rc.command == Command::Regret ? StepSchedule::Type::InvSqrt : StepSchedule::Type::Constant;
  if (rc.command == Command::Diag && !opt_names.empty())
    throw UsageError("--opt: diag always uses adam and adax");
  if (opt_names.empty()) opt_names = detail::default_optimizers(rc.command);
  for (const std::string& name : opt_names)
    rc.optimizers.push_back(resolve_optimizer(name, ov, default_schedule));

  rc.problem = o_problem->count() ? problem : (rc.command == Command::Regret ? "reddi" : "decay");
  rc.c = o_c->count() ? c : (rc.problem == "reddi" ? 3.0 : 1e-3);
  rc.x0 = o_x0->count() ? x0 : (rc.problem == "reddi" ? 0.0 : 1.0);
  rc.decay_n = detail::to_count("--decay-n", decay_n, 0);
  rc.horizon = detail::to_count("--T", horizon, 1);
  rc.every = every == 0.0 ? (rc.horizon <= 100000 ? 1 : (rc.horizon + 99999) / 100000)
                          : detail::to_count("--every", every, 1);
  rc.epochs = detail::to_count("--epochs", epochs, 0);
  rc.batch = detail::to_count("--batch", batch, 1);
  rc.hidden = detail::to_count("--hidden", hidden, 1);
  rc.samples = detail::to_count("--n", samples, 2);
  rc.features = detail::to_count("--d", features, 1);
  rc.classes = detail::to_count("--k", classes, 2);
  rc.jobs = detail::to_count("--jobs", jobs, 1);
  if (!(rc.spread >= 0.0) || !std::isfinite(rc.spread))
    throw UsageError("--spread: must be >= 0");
  if (rc.samples < rc.classes) throw UsageError("--n: must be >= --k");

  if (rc.command == Command::Synthetic || rc.command == Command::Regret ||
      rc.command == Command::Diag) {
    if (!(rc.lambda > 0.0 && rc.lambda < 1.0)) throw UsageError("--lambda: must lie in (0, 1)");
    if (!(rc.c > 0.0) || !std::isfinite(rc.c)) throw UsageError("--C: must be positive");
  }
  if (rc.command == Command::Synthetic || rc.command == Command::Regret) {
    try {
      const OnlineProblem p = rc.make_problem();
      const double xs[1] = {rc.x0};
      if (!p.domain().contains(xs)) throw UsageError("--x0: outside the problem domain");
    } catch (const PreconditionError& e) {
      throw UsageError(std::string("--C: ") + e.what());
    }
  }
  return rc;
}

inline RunConfig parse_args(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"adax_cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

}  // namespace adax::cli

#endif  // ADAX_CLI_RUN_CONFIG_HPP

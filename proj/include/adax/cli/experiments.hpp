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

#ifndef ADAX_CLI_EXPERIMENTS_HPP
#define ADAX_CLI_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "adax/cli/run_config.hpp"
#include "adax/errors.hpp"
#include "adax/format.hpp"
#include "adax/nn/dataset.hpp"
#include "adax/nn/train.hpp"
#include "adax/oracle/closed_form.hpp"
#include "adax/oracle/monte_carlo.hpp"
#include "adax/oracle/simulate.hpp"
#include "adax/problems/regret.hpp"
#include "adax/problems/runner.hpp"

namespace adax::cli {

inline constexpr const char* kSyntheticHeader = "t,x,grad,delta,vhat_avg,gamma_min";
inline constexpr const char* kRegretHeader = "t,x,cumulative_regret,avg_regret";
inline constexpr const char* kTrainHeader = "iter,epoch,loss,train_acc,test_acc,vhat_avg";
inline constexpr const char* kDiagHeader = "name,closed_form,simulated,rel_err";

using Entries = std::vector<std::pair<std::string, std::string>>;

inline void write_echo(std::ostream& out, const Entries& entries) {
  for (const auto& [k, v] : entries) out << "# " << k << " = " << v << '\n';
}

inline bool keep_row(std::size_t t, std::size_t every, std::size_t last) {
  return t == 1 || t == last || t % every == 0;
}

inline void emit_synthetic(const RunConfig& rc, const OptimizerChoice& opt, std::ostream& out) {
  Entries e = rc.entries();
  e.emplace_back("opt", opt.name);
  for (auto& kv : config_entries(opt.config)) e.push_back(std::move(kv));
  write_echo(out, e);
  out << kSyntheticHeader << '\n';
  const OnlineProblem problem = rc.make_problem();
  const double x0[1] = {rc.x0};
  run_with(problem, opt.config, x0, rc.horizon, [&](const TraceRecord& r) {
    if (!keep_row(r.t, rc.every, rc.horizon)) return;
    out << r.t << ',' << format_double(r.x[0]) << ',' << format_double(r.grad[0]) << ','
        << format_double(r.step.delta[0]) << ',' << format_double(r.vhat_avg) << ','
        << format_double(r.gamma_min) << '\n';
  });
}

inline void emit_regret(const RunConfig& rc, const OptimizerChoice& opt, std::ostream& out) {
  Entries e = rc.entries();
  e.emplace_back("opt", opt.name);
  for (auto& kv : config_entries(opt.config)) e.push_back(std::move(kv));
  const OnlineProblem problem = rc.make_problem();
  const Vector best = best_fixed_point(problem, rc.horizon);
  e.emplace_back("comparator", format_double(best[0]));
  write_echo(out, e);
  out << kRegretHeader << '\n';
  const double x0[1] = {rc.x0};
  double cumulative = 0.0;
  run_with(problem, opt.config, x0, rc.horizon, [&](const TraceRecord& r) {
    cumulative += r.cost - problem.cost_and_grad(r.t, best).cost;
    if (!keep_row(r.t, rc.every, rc.horizon)) return;
    out << r.t << ',' << format_double(r.x[0]) << ',' << format_double(cumulative) << ','
        << format_double(cumulative / static_cast<double>(r.t)) << '\n';
  });
}

inline void emit_train(const RunConfig& rc, const OptimizerChoice& opt, const nn::Dataset& data,
                       std::ostream& out) {
  nn::TrainOptions to;
  to.epochs = rc.epochs;
  to.batch_size = rc.batch;
  to.hidden = rc.hidden;
  to.seed = rc.seed;
  const nn::TrainReport rep = nn::train(opt.config, data, to);
  if (rep.error) throw NumericError(rep.iterations() + 1, *rep.error);

  Entries e = rc.entries();
  e.emplace_back("opt", opt.name);
  for (const auto& kv : rep.config) e.push_back(kv);
  e.emplace_back("final_test_loss", format_double(rep.test_loss.back()));
  e.emplace_back("checksum", std::to_string(rep.checksum));
  write_echo(out, e);
  out << kTrainHeader << '\n';
  out << "0,0," << format_double(rep.train_loss[0]) << ',' << format_double(rep.train_acc[0])
      << ',' << format_double(rep.test_acc[0]) << ",\n";
  const std::size_t n = rep.iterations();
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t epoch = rep.iter_epoch[i - 1];
    const bool epoch_end = i == n || rep.iter_epoch[i] != epoch;
    if (!epoch_end && !keep_row(i, rc.every, n)) continue;
    out << i << ',' << epoch << ',' << format_double(rep.iter_loss[i - 1]) << ',';
    if (epoch_end)
      out << format_double(rep.train_acc[epoch]) << ',' << format_double(rep.test_acc[epoch]);
    else
      out << ',';
    out << ',';
    if (!rep.vhat_avg.empty()) out << format_double(rep.vhat_avg[i - 1]);
    out << '\n';
  }
}

/**
 * Closed forms against simulation on the decaying gradients g_t = C
 * lambda^(t-1), with beta1 = 0 and epsilon = 0. The first optimizer supplies
 * beta2 for the Adam and AMSGrad rows, the second for the AdaX rows.
 */
inline void emit_diag(const RunConfig& rc, std::ostream& out) {
  OptimizerConfig adam = rc.optimizers.at(0).config;
  OptimizerConfig adax = rc.optimizers.at(1).config;
  for (OptimizerConfig* c : {&adam, &adax}) {
    c->beta1 = 0.0;
    c->epsilon = 0.0;
    c->step.type = StepSchedule::Type::Constant;
    c->weight_decay = 0.0;
    c->decay_mode = DecayMode::None;
  }
  Entries e = rc.entries();
  for (const auto& [k, v] : config_entries(adam)) e.emplace_back("adam." + k, v);
  for (const auto& [k, v] : config_entries(adax)) e.emplace_back("adax." + k, v);
  constexpr std::size_t kTrials = 10000;
  e.emplace_back("mc_trials", std::to_string(kTrials));
  write_echo(out, e);
  out << kDiagHeader << '\n';

  auto row = [&](const std::string& name, double closed, double simulated) {
    const double rel = std::abs(simulated - closed) / std::abs(closed);
    out << name << ',' << format_double(closed) << ',' << format_double(simulated) << ','
        << format_double(rel) << '\n';
  };

  const std::size_t T = rc.horizon;
  const Vector grads = oracle::decay_gradients(rc.c, rc.lambda, T);
  const oracle::MomentTrace ta = oracle::trace_moments(adam, grads);
  const oracle::MomentTrace tx = oracle::trace_moments(adax, grads);

  row("adam_vt_T", oracle::adam_vt_closed(T, rc.c, rc.lambda, adam.beta2), ta.v.back());
  row("adam_min_step_ratio", oracle::adam_step_lower_bound(adam.beta2, rc.lambda),
      *std::min_element(ta.ratio.begin(), ta.ratio.end()));
  row("adax_vhat_T", oracle::adax_vhat_closed(T, rc.c, rc.lambda, adax.beta2), tx.vhat.back());
  double worst = 0.0;
  for (std::size_t t = 1; t <= T; ++t)
    worst = std::max(worst, tx.ratio[t - 1] / std::pow(rc.lambda, static_cast<double>(t - 1)));
  row("adax_max_step_ratio", oracle::adax_ratio_bound(adax.beta2, rc.lambda), worst);

  const double sq = std::sqrt(adam.beta2);
  if (sq < rc.lambda) {
    const double tmax = oracle::amsgrad_tmax(adam.beta2, rc.lambda);
    const auto horizon = std::max<std::size_t>(T, static_cast<std::size_t>(2.0 * tmax) + 2);
    const oracle::MomentTrace tm =
        oracle::trace_moments(adam, oracle::decay_gradients(rc.c, rc.lambda, horizon));
    const auto peak = std::max_element(tm.v.begin(), tm.v.end()) - tm.v.begin();
    row("amsgrad_tmax", tmax, static_cast<double>(peak + 1));
  }

  const oracle::MeanEstimate mc = oracle::mc_bias_check(100, adax.beta2, kTrials, rc.seed);
  row("adax_bias_mean_t100", 1.0, mc.mean);
}

/// Output file for each run, in config order.
inline std::vector<std::filesystem::path> output_paths(const RunConfig& rc) {
  const std::size_t runs = rc.command == Command::Diag ? 1 : rc.optimizers.size();
  const std::filesystem::path out(rc.out);
  if (out.extension() == ".csv") {
    if (runs != 1) throw UsageError("--out: a .csv path needs exactly one run");
    return {out};
  }
  if (rc.command == Command::Diag) return {out / "diag.csv"};
  std::vector<std::filesystem::path> paths;
  for (const auto& o : rc.optimizers) {
    std::string file = std::string(to_string(rc.command)) + "_" + o.name;
    if (rc.command == Command::Train) file += "_seed" + std::to_string(rc.seed);
    paths.push_back(out / (file + ".csv"));
  }
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (paths[i] == paths[j]) throw UsageError("--opt: optimizer listed twice");
  return paths;
}

namespace detail {

// Writes one file; on any failure the partial file is removed.
inline std::optional<std::string> write_run(const std::filesystem::path& path,
                                            const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) return "cannot create " + path.parent_path().string() + ": " + ec.message();
  std::string failure;
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return "cannot open " + path.string() + " for writing";
    try {
      body(out);
      out.flush();
      if (!out) failure = "write failed for " + path.string();
    } catch (const std::exception& e) {
      failure = e.what();
    }
  }
  if (failure.empty()) return std::nullopt;
  std::filesystem::remove(path, ec);
  return failure;
}

}  // namespace detail

/**
 * Executes the configured experiment and writes its CSV files. Runs go to
 * up to `jobs` worker threads; messages are printed in config order once all
 * runs finish. Returns 0, 1 (some run failed) or 2 (bad output path).
 */
inline int run_and_emit(const RunConfig& rc, std::ostream& log, std::ostream& err) {
  std::vector<std::filesystem::path> paths;
  try {
    paths = output_paths(rc);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::optional<nn::Dataset> data;
  if (rc.command == Command::Train) {
    try {
      data = rc.data.empty()
                 ? nn::make_blobs(rc.seed, rc.samples, rc.features, rc.classes, rc.spread)
                 : nn::read_csv(rc.data, rc.seed);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }

  std::vector<std::function<void(std::ostream&)>> bodies;
  if (rc.command == Command::Diag) {
    bodies.emplace_back([&rc](std::ostream& o) { emit_diag(rc, o); });
  } else {
    for (const OptimizerChoice& opt : rc.optimizers) {
      switch (rc.command) {
        case Command::Synthetic:
          bodies.emplace_back([&rc, &opt](std::ostream& o) { emit_synthetic(rc, opt, o); });
          break;
        case Command::Regret:
          bodies.emplace_back([&rc, &opt](std::ostream& o) { emit_regret(rc, opt, o); });
          break;
        default:
          bodies.emplace_back([&rc, &opt, &data](std::ostream& o) { emit_train(rc, opt, *data, o); });
          break;
      }
    }
  }

  std::vector<std::optional<std::string>> failures(bodies.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < bodies.size(); i = next++)
      failures[i] = detail::write_run(paths[i], bodies[i]);
  };
  const std::size_t threads = std::min(rc.jobs, bodies.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int status = 0;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (failures[i]) {
      err << "error: " << paths[i].string() << ": " << *failures[i] << '\n';
      status = 1;
    } else {
      log << "wrote " << paths[i].string() << '\n';
    }
  }
  return status;
}

}  // namespace adax::cli

#endif  // ADAX_CLI_EXPERIMENTS_HPP

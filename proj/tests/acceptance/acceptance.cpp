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


// Acceptance gate. Runs every criterion at its stated tolerance and prints one
// PASS/FAIL line each; exits nonzero if any fails.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "adax/adax.hpp"

namespace {

using namespace adax;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Step at which the scalar iterate first goes negative, stopping early.
std::optional<std::size_t> crossing(const OnlineProblem& p, const OptimizerConfig& c, double x0,
                                    std::size_t horizon) {
  std::optional<std::size_t> hit;
  const double xs[1] = {x0};
  if (x0 < 0.0) return 1;
  run_with(p, c, std::span<const double>(xs, 1), horizon, [&](const TraceRecord& r) {
    if (r.x_next[0] < 0.0) hit = r.t + 1;
    return !hit;
  });
  return hit;
}

std::string show(std::optional<std::size_t> t) {
  return t ? std::to_string(*t) : std::string("none");
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
  const OnlineProblem p = OnlineProblem::decay(1e-3, 0.9999, 1);
  Outcome o{true, ""};
  for (double b1 : {0.0, 0.9}) {
    OptimizerConfig adam = OptimizerConfig::defaults(Kind::Adam);
    adam.beta1 = b1;
    adam.step = StepSchedule::constant(1e-3);
    const auto t_const = crossing(p, adam, 1.0, 10'000'000);
    // Decaying step: epsilon-free, otherwise eps swamps sqrt(vhat) once
    // C lambda^t < 1e-8 and the iterate stalls.
    adam.step = StepSchedule::inv_sqrt(1e-3);
    adam.epsilon = 0.0;
    const auto t_sqrt = crossing(p, adam, 1.0, 10'000'000);
    o.pass = o.pass && t_const && t_sqrt;
    o.detail += fmt("adam b1=%g cross=%s/%s ", b1, show(t_const).c_str(), show(t_sqrt).c_str());
  }
  OptimizerConfig adax = OptimizerConfig::defaults(Kind::AdaX);
  adax.step = StepSchedule::constant(0.005);
  const auto t_adax = crossing(p, adax, 1.0, 1'000'000);
  o.pass = o.pass && !t_adax;
  o.detail += "adax cross=" + show(t_adax) + " (required none)";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  constexpr double lambda = 0.9999;
  constexpr std::size_t T = 10'000;
  const Vector g = oracle::decay_gradients(1e-3, lambda, T);

  OptimizerConfig adam = OptimizerConfig::defaults(Kind::Adam);
  adam.beta1 = 0.0;
  adam.epsilon = 0.0;
  const oracle::MomentTrace ta = oracle::trace_moments(adam, g);
  const double adam_min = *std::min_element(ta.ratio.begin(), ta.ratio.end());

  OptimizerConfig adax = OptimizerConfig::defaults(Kind::AdaX);
  adax.beta1 = 0.0;
  adax.epsilon = 0.0;
  const oracle::MomentTrace tx = oracle::trace_moments(adax, g);
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    const double decay = std::pow(lambda, static_cast<double>(t - 1));
    const double step = tx.ratio[t - 1] * tx.alpha[t - 1];
    if (step > tx.alpha[t - 1] * 1.73200 * decay + 1e-12) ++violations;
    worst = std::max(worst, tx.ratio[t - 1] / decay);
  }
  return {adam_min >= 0.89452 - 1e-6 && violations == 0,
          fmt("adam min |delta|/alpha=%.6f (>= 0.894519); adax max |delta|/(alpha lambda^(t-1))=%.6f, "
              "%zu steps above 1.73200",
              adam_min, worst, violations)};
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
  constexpr double beta2 = 0.999, lambda = 0.9999, c = 1e-3;
  const double tmax = oracle::amsgrad_tmax(beta2, lambda);
  constexpr std::size_t T = 10'000;

  OptimizerConfig adam = OptimizerConfig::defaults(Kind::Adam);
  adam.beta1 = 0.0;
  adam.epsilon = 0.0;
  const oracle::MomentTrace tr = oracle::trace_moments(adam, oracle::decay_gradients(c, lambda, T));
  const auto peak = static_cast<std::size_t>(std::max_element(tr.v.begin(), tr.v.end()) - tr.v.begin()) + 1;
  bool shape = true;
  for (std::size_t t = 2; t <= T; ++t) {
    const bool up = tr.v[t - 1] > tr.v[t - 2];
    if (static_cast<double>(t) <= tmax ? !up : up) shape = false;
  }
  const bool near = std::abs(static_cast<double>(peak) - tmax) <= 1.0;

  // While v_t rises AMSGrad's running max is v_t itself, so it must track the
  // uncorrected EMA method step for step.
  const OnlineProblem p = OnlineProblem::decay(c, lambda, 1);
  OptimizerConfig ams = OptimizerConfig::defaults(Kind::AmsGrad);
  ams.beta1 = 0.0;
  ams.epsilon = 0.0;
  ams.step = StepSchedule::inv_sqrt(1e-4);
  OptimizerConfig rms = OptimizerConfig::defaults(Kind::RmsProp);
  rms.beta2 = beta2;
  rms.epsilon = 0.0;
  rms.step = ams.step;
  const auto horizon = static_cast<std::size_t>(std::floor(tmax));
  const Trajectory a = run(p, ams, 1.0, horizon);
  const Trajectory b = run(p, rms, 1.0, horizon);
  double gap = std::abs(a.final_x[0] - b.final_x[0]);
  for (std::size_t t = 0; t < horizon; ++t) gap = std::max(gap, std::abs(a.iterates[t][0] - b.iterates[t][0]));

  return {shape && near && gap <= 1e-12,
          fmt("tmax=%.3f argmax=%zu monotone_split=%s; amsgrad vs ema max |dx| over t<=%zu = %.3g",
              tmax, peak, shape ? "yes" : "no", horizon, gap)};
}

// ---------------------------------------------------------------- 4

Outcome criterion4() {
  Rng rng = make_rng(4, Stream::Property);
  std::uniform_int_distribution<std::size_t> dim(1, 16), len(1, 500);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  std::size_t bad = 0, checked = 0;
  double worst = std::numeric_limits<double>::infinity();

  struct Variant {
    double beta2;
    Beta2Schedule schedule;
  };
  const Variant variants[] = {{1e-5, Beta2Schedule::Constant},
                              {1e-4, Beta2Schedule::Constant},
                              {1e-3, Beta2Schedule::Constant},
                              {1e-4, Beta2Schedule::InvTime}};
  for (const Variant& v : variants) {
    OptimizerConfig c = OptimizerConfig::defaults(Kind::AdaX);
    c.beta2 = v.beta2;
    c.beta2_schedule = v.schedule;
    c.step = StepSchedule::inv_sqrt(1.0);
    for (int seq = 0; seq < 1000; ++seq) {
      const std::size_t d = dim(rng), T = len(rng);
      OptimizerState state(d);
      Vector x(d, 0.0), g(d), prev(d, 0.0);
      double prev_alpha = 0.0;
      for (std::size_t t = 1; t <= T; ++t) {
        for (double& e : g) e = entry(rng);
        const StepResult r = apply_step(c, state, x, g);
        if (t > 1) {
          const Vector gam = oracle::gamma_diag(r.step.vhat, prev, r.alpha, prev_alpha);
          for (double e : gam) {
            ++checked;
            worst = std::min(worst, e);
            if (e < -1e-12) ++bad;
          }
        }
        prev = r.step.vhat;
        prev_alpha = r.alpha;
      }
    }
  }
  return {bad == 0, fmt("%zu Gamma entries checked, %zu below -1e-12, min entry %.3g", checked, bad, worst)};
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  OptimizerConfig adam = OptimizerConfig::defaults(Kind::Adam);
  adam.beta2 = 0.1;
  adam.step = StepSchedule::inv_sqrt(1e-3);
  OptimizerState state(1);
  const double x[1] = {0.0};
  const double g1[1] = {1.0}, g2[1] = {0.0};
  const StepResult r1 = apply_step(adam, state, x, g1);
  const StepResult r2 = apply_step(adam, state, x, g2);
  const Vector gam = oracle::gamma_diag(r2.step.vhat, r1.step.vhat, r2.alpha, r1.alpha);
  return {gam[0] < 0.0, fmt("gamma_diag at t=2 = %.6g", gam[0])};
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
  constexpr double c = 1e-3, lambda = 0.9999;
  constexpr std::size_t T = 10'000;
  const Vector g = oracle::decay_gradients(c, lambda, T);
  OptimizerConfig adam = OptimizerConfig::defaults(Kind::Adam);
  OptimizerConfig adax = OptimizerConfig::defaults(Kind::AdaX);
  const oracle::MomentTrace ta = oracle::trace_moments(adam, g);
  const oracle::MomentTrace tx = oracle::trace_moments(adax, g);
  double ea = 0.0, ex = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    const double va = oracle::adam_vt_closed(t, c, lambda, adam.beta2);
    const double vx = oracle::adax_vhat_closed(t, c, lambda, adax.beta2);
    ea = std::max(ea, std::abs(ta.v[t - 1] - va) / va);
    ex = std::max(ex, std::abs(tx.vhat[t - 1] - vx) / vx);
  }
  return {ea <= 1e-9 && ex <= 1e-9, fmt("max rel err adam v_t=%.3g, adax vhat_t=%.3g", ea, ex)};
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
  constexpr std::uint64_t seed = 7;
  Outcome o{true, fmt("seed=%llu", static_cast<unsigned long long>(seed))};
  for (std::size_t t : {1, 10, 100}) {
    const oracle::MeanEstimate m = oracle::mc_bias_check(t, 1e-4, 10'000, seed);
    const double z = std::abs(m.mean - 1.0) / m.std_error;
    o.pass = o.pass && z <= 3.0;
    o.detail += fmt(" t=%zu mean=%.4f se=%.4f z=%.2f;", t, m.mean, m.std_error, z);
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  constexpr std::size_t T = 30'000;
  const OnlineProblem p = OnlineProblem::reddi(3.0);
  auto avg = [&](Kind k) {
    OptimizerConfig c = OptimizerConfig::defaults(k);
    c.step = StepSchedule::inv_sqrt(0.1);
    const Trajectory traj = run(p, c, 0.0, T);
    return regret(traj, p, T) / static_cast<double>(T);
  };
  const double sgd = avg(Kind::Sgd), adax = avg(Kind::AdaX), adam = avg(Kind::Adam);
  return {sgd <= 0.05 && adax <= 0.05,
          fmt("alpha_t=0.1/sqrt(t): R_T/T sgd=%.4f adax=%.4f (adam=%.4f, informational)", sgd, adax, adam)};
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
  const nn::Dataset ds = nn::make_blobs(9, 3000, 20, 3, 1.0);
  const nn::MlpShape s{ds.d, 32, ds.k};
  const std::vector<std::size_t> batch(ds.train.begin(), ds.train.begin() + 32);
  constexpr double h = 1e-5;
  Rng rng = make_rng(9, Stream::Property);
  std::uniform_real_distribution<double> bias(-0.5, 0.5);
  double worst = 0.0;
  constexpr int points = 10;
  for (int pt = 0; pt < points; ++pt) {
    Vector p = nn::init_params(s, 1000 + pt);
    for (std::size_t i = s.b1(); i < s.w2(); ++i) p[i] = bias(rng);
    for (std::size_t i = s.b2(); i < s.size(); ++i) p[i] = bias(rng);
    const nn::LossGrad lg = nn::forward_backward(p, s, ds, batch);
    for (std::size_t i = 0; i < s.size(); ++i) {
      Vector hi = p, lo = p;
      hi[i] += h;
      lo[i] -= h;
      const double fd =
          (nn::forward_backward(hi, s, ds, batch).loss - nn::forward_backward(lo, s, ds, batch).loss) / (2 * h);
      const double err = std::abs(fd - lg.grads[i]) / std::max({std::abs(fd), std::abs(lg.grads[i]), 1e-4});
      worst = std::max(worst, err);
    }
  }
  return {worst <= 1e-5, fmt("%d points x %zu params, max rel err %.3g", points, s.size(), worst)};
}

// ---------------------------------------------------------------- 10, 11

// Blobs regime for the training checks. Spread 0.7 keeps the task learnable
// well above 90%; batch 1 gives 72k optimizer steps over 30 epochs.
constexpr std::size_t kSeeds = 5;
constexpr double kSpread = 0.7;
constexpr std::size_t kBatch = 1;

struct TrainJob {
  std::string name;
  OptimizerConfig config;
  std::uint64_t seed;
  nn::TrainReport report;
};

OptimizerConfig decoupled(Kind k, double wd) {
  OptimizerConfig c = OptimizerConfig::defaults(k);
  c.weight_decay = wd;
  c.decay_mode = DecayMode::Decoupled;
  return c;
}

void run_jobs(std::vector<TrainJob>& jobs) {
  std::vector<nn::Dataset> data;
  for (std::uint64_t s = 0; s < kSeeds; ++s) data.push_back(nn::make_blobs(s, 3000, 20, 3, kSpread));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      nn::TrainOptions o;
      o.epochs = 30;
      o.hidden = 32;
      o.batch_size = kBatch;
      o.seed = jobs[i].seed;
      jobs[i].report = nn::train(jobs[i].config, data[jobs[i].seed], o);
    }
  };
  const unsigned n = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

double min_of(const Vector& v) { return *std::min_element(v.begin(), v.end()); }

Outcome criterion10() {
  std::vector<std::pair<std::string, OptimizerConfig>> configs;
  for (Kind k : {Kind::Sgd, Kind::Sgdm, Kind::AdaGrad, Kind::RmsProp, Kind::Adam, Kind::AmsGrad, Kind::AdaX,
                 Kind::Padam, Kind::Padax})
    configs.emplace_back(std::string(to_string(k)), OptimizerConfig::defaults(k));
  configs.emplace_back("adamw", decoupled(Kind::Adam, 1e-1));
  configs.emplace_back("adaxw", decoupled(Kind::AdaX, 5e-2));

  std::vector<TrainJob> jobs;
  for (const auto& [name, c] : configs)
    for (std::uint64_t s = 0; s < kSeeds; ++s) jobs.push_back({name, c, s, {}});
  run_jobs(jobs);

  auto find = [&](const std::string& name, std::uint64_t seed) -> const nn::TrainReport& {
    for (const auto& j : jobs)
      if (j.name == name && j.seed == seed) return j.report;
    std::abort();
  };

  Outcome o{true, ""};
  std::string low;
  double worst_acc = 1.0;
  for (const auto& j : jobs) {
    if (j.report.error) {
      o.pass = false;
      low += " " + j.name + "/seed" + std::to_string(j.seed) + ":error";
      continue;
    }
    const double acc = j.report.test_acc.back();
    worst_acc = std::min(worst_acc, acc);
    if (acc < 0.90) {
      o.pass = false;
      low += fmt(" %s/seed%llu:%.4f", j.name.c_str(), static_cast<unsigned long long>(j.seed), acc);
    }
  }
  double adaxw = 0.0, adamw = 0.0;
  std::size_t vhat_wins = 0;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    adaxw += find("adaxw", s).test_acc.back() / kSeeds;
    adamw += find("adamw", s).test_acc.back() / kSeeds;
    if (min_of(find("adax", s).vhat_avg) > min_of(find("adam", s).vhat_avg)) ++vhat_wins;
  }
  o.pass = o.pass && adaxw >= adamw - 0.01 && vhat_wins == kSeeds;
  o.detail = fmt("min test acc %.4f%s; mean acc adaxw=%.4f adamw=%.4f; min vhat_avg adax>adam on %zu/%zu seeds",
                 worst_acc, low.empty() ? "" : (" below 0.90:" + low).c_str(), adaxw, adamw, vhat_wins, kSeeds);
  return o;
}

Outcome criterion11() {
  const double eps[] = {1e-8, 1e-5, 1e-3};
  std::vector<TrainJob> jobs;
  for (const char* name : {"adaxw", "adamw"}) {
    OptimizerConfig base = std::string(name) == "adaxw" ? decoupled(Kind::AdaX, 5e-2) : decoupled(Kind::Adam, 1e-1);
    for (double e : eps) {
      base.epsilon = e;
      for (std::uint64_t s = 0; s < kSeeds; ++s) jobs.push_back({name, base, s, {}});
    }
  }
  run_jobs(jobs);

  // Relative spread: (max - min) / min of the final test loss across eps.
  auto spread = [&](const std::string& name, std::uint64_t seed) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& j : jobs) {
      if (j.name != name || j.seed != seed) continue;
      if (j.report.error) return std::numeric_limits<double>::infinity();
      lo = std::min(lo, j.report.test_loss.back());
      hi = std::max(hi, j.report.test_loss.back());
    }
    return (hi - lo) / lo;
  };
  Outcome o{true, "adaxw spread per seed:"};
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    const double sp = spread("adaxw", s);
    o.pass = o.pass && sp <= 0.02;
    o.detail += fmt(" %.4f", sp);
  }
  o.detail += " (<= 0.02); adamw (reported):";
  for (std::uint64_t s = 0; s < kSeeds; ++s) o.detail += fmt(" %.4f", spread("adamw", s));
  return o;
}

// ---------------------------------------------------------------- 12

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion12() {
  const fs::path root = fs::temp_directory_path() / ("adax_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::vector<std::string> invocations = {
      "synthetic --opt adam,adax,amsgrad --T 20000",
      "synthetic --problem reddi --opt sgd,adax --schedule invsqrt --T 5000",
      "regret --T 10000 --jobs 2",
      "train --opt adaxw,adamw,sgdm --epochs 3 --seed 11 --jobs 3",
      "diag --seed 3",
  };
  Outcome o{true, ""};
  std::size_t files = 0, identical = 0;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    const fs::path a = root / ("a" + std::to_string(i)), b = root / ("b" + std::to_string(i));
    for (const fs::path& dir : {a, b}) {
      const std::string cmd =
          std::string(ADAX_CLI_PATH) + " " + invocations[i] + " --out " + dir.string() + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        o.pass = false;
        o.detail += " failed: " + invocations[i] + ";";
      }
    }
    if (!fs::exists(a)) continue;
    for (const auto& entry : fs::directory_iterator(a)) {
      ++files;
      const fs::path other = b / entry.path().filename();
      if (fs::exists(other) && slurp(entry.path()) == slurp(other)) ++identical;
    }
  }
  fs::remove_all(root);
  o.pass = o.pass && files > 0 && identical == files;
  o.detail = fmt("%zu invocations, %zu/%zu CSV files byte-identical across reruns", invocations.size(), identical,
                 files) + o.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "decaying-gradient non-convergence", 10, criterion1},
      {2, "per-step displacement bounds", 5, criterion2},
      {3, "EMA peak and AMSGrad agreement", 10, criterion3},
      {4, "Gamma_t nonnegativity for AdaX", 30, criterion4},
      {5, "Adam Gamma_t violation witness", 1, criterion5},
      {6, "closed-form moment oracles", 5, criterion6},
      {7, "AdaX bias correction (Monte Carlo)", 10, criterion7},
      {8, "regret sublinearity", 60, criterion8},
      {9, "MLP gradient check", 5, criterion9},
      {10, "desk-scale training properties", 300, criterion10},
      {11, "epsilon robustness", 300, criterion11},
      {12, "CLI determinism", 60, criterion12},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %s  %s  [%.2fs / %.0fs%s]  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                c.budget_s, in_time ? "" : " over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

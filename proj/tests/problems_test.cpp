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

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "adax/oracle/diagnostics.hpp"
#include "adax/problems/online_problem.hpp"
#include "adax/problems/regret.hpp"
#include "adax/problems/runner.hpp"
#include "adax/rng.hpp"

namespace adax {
namespace {

OptimizerConfig make(Kind k, StepSchedule step) {
  OptimizerConfig c = OptimizerConfig::defaults(k);
  c.step = step;
  return c;
}

TEST(Reddi, CostAndGradient) {
  const OnlineProblem p = OnlineProblem::reddi(3.0);
  CostGrad cg = p.cost_and_grad(1, 0.5);
  EXPECT_DOUBLE_EQ(cg.cost, 1.5);
  EXPECT_DOUBLE_EQ(cg.grad[0], 3.0);
  cg = p.cost_and_grad(2, 0.5);
  EXPECT_DOUBLE_EQ(cg.cost, -0.5);
  EXPECT_DOUBLE_EQ(cg.grad[0], -1.0);
  EXPECT_DOUBLE_EQ(p.cost_and_grad(3, 0.5).grad[0], -1.0);
  EXPECT_DOUBLE_EQ(p.cost_and_grad(4, 0.5).grad[0], 3.0);
}

TEST(Reddi, Preconditions) {
  EXPECT_THROW(OnlineProblem::reddi(2.0), PreconditionError);
  const OnlineProblem p = OnlineProblem::reddi();
  EXPECT_THROW(p.cost_and_grad(1, 1.5), DomainError);
  EXPECT_THROW(p.cost_and_grad(0, 0.0), PreconditionError);
}

TEST(Decay, GradientAtStepFive) {
  const OnlineProblem p = OnlineProblem::decay(1e-3, 0.9999, 1);
  EXPECT_NEAR(p.cost_and_grad(5, 1.0).grad[0], 9.996000599960001e-4, 1e-18);
}

TEST(Decay, FlatBelowZero) {
  const OnlineProblem p = OnlineProblem::decay();
  const CostGrad cg = p.cost_and_grad(3, -0.5);
  EXPECT_EQ(cg.cost, 0.0);
  EXPECT_EQ(cg.grad[0], 0.0);
}

TEST(Decay, KinkedPhaseUsesSign) {
  const OnlineProblem p = OnlineProblem::decay(2.0, 0.5, 2);
  EXPECT_DOUBLE_EQ(p.cost_and_grad(1, -0.5).cost, 1.0);
  EXPECT_DOUBLE_EQ(p.cost_and_grad(1, -0.5).grad[0], -2.0);
  EXPECT_DOUBLE_EQ(p.cost_and_grad(2, 0.5).grad[0], 1.0);
  EXPECT_EQ(p.cost_and_grad(2, 0.0).grad[0], 0.0);
  EXPECT_DOUBLE_EQ(p.cost_and_grad(3, 0.5).grad[0], 0.5);
}

TEST(Decay, ZeroIsAbsorbing) {
  const OnlineProblem p = OnlineProblem::decay();
  EXPECT_EQ(p.cost_and_grad(2, 0.0).grad[0], 0.0);
  const Trajectory tr = run(p, make(Kind::Adam, StepSchedule::constant(1e-3)), 0.0, 50);
  for (const Vector& x : tr.iterates) EXPECT_EQ(x[0], 0.0);
}

TEST(Decay, DomainAndParameters) {
  const OnlineProblem p = OnlineProblem::decay(1e-3, 0.9999, 1);
  EXPECT_DOUBLE_EQ(p.domain().lower[0], -2.0);
  EXPECT_NEAR(p.domain().upper[0], 10.0, 1e-9);
  EXPECT_THROW(OnlineProblem::decay(0.0), PreconditionError);
  EXPECT_THROW(OnlineProblem::decay(1.0, 1.0), PreconditionError);
  EXPECT_THROW(OnlineProblem::decay(1.0, 0.5, 0), PreconditionError);
}

TEST(Quadratic, CostAndGradient) {
  const OnlineProblem p =
      OnlineProblem::quadratic({2.0, 1.0, 1.0, 3.0}, {1.0, -1.0}, BoxDomain::cube(2, -5, 5));
  const CostGrad cg = p.cost_and_grad(1, Vector{1.0, 2.0});
  // 1/2 [1 2] [[2 1][1 3]] [1 2]^T - (1 - 2) = 0.5 * 18 + 1
  EXPECT_DOUBLE_EQ(cg.cost, 10.0);
  EXPECT_DOUBLE_EQ(cg.grad[0], 3.0);
  EXPECT_DOUBLE_EQ(cg.grad[1], 8.0);
  EXPECT_THROW(OnlineProblem::quadratic({1.0}, {1.0, 2.0}, BoxDomain::cube(2, 0, 1)),
               DimensionError);
}

TEST(BestFixedPoint, Reddi) {
  EXPECT_EQ(best_fixed_point(OnlineProblem::reddi(3.0), 9)[0], -1.0);
}

TEST(BestFixedPoint, Decay) {
  EXPECT_EQ(best_fixed_point(OnlineProblem::decay(0.5, 0.3, 4), 100)[0], 0.0);
}

TEST(BestFixedPoint, DiagonalQuadratic) {
  const OnlineProblem p = OnlineProblem::quadratic({2.0}, {1.0}, BoxDomain::interval(-1, 1));
  EXPECT_DOUBLE_EQ(best_fixed_point(p, 10)[0], 0.5);
  const OnlineProblem clipped =
      OnlineProblem::quadratic({2.0, 0.0, 0.0, 1.0}, {10.0, -0.5}, BoxDomain::cube(2, -1, 1));
  const Vector x = best_fixed_point(clipped, 10);
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], -0.5);
}

TEST(BestFixedPoint, DenseQuadraticGrid) {
  // Unconstrained minimizer A^-1 b = (1/3, 1/3) lies inside the box.
  const OnlineProblem p =
      OnlineProblem::quadratic({2.0, 1.0, 1.0, 2.0}, {1.0, 1.0}, BoxDomain::cube(2, -1, 1));
  const Vector x = best_fixed_point(p, 1);
  // The objective is flat to one ulp within ~sqrt(eps) of the minimizer.
  EXPECT_NEAR(x[0], 1.0 / 3.0, 1e-7);
  EXPECT_NEAR(x[1], 1.0 / 3.0, 1e-7);
  // Constrained: minimize over x1 = 1 edge; x0 = (b0 - a01) / a00 = 0.
  const OnlineProblem q =
      OnlineProblem::quadratic({2.0, 1.0, 1.0, 2.0}, {1.0, 5.0}, BoxDomain::cube(2, -1, 1));
  const Vector y = best_fixed_point(q, 1);
  EXPECT_NEAR(y[0], 0.0, 1e-7);
  EXPECT_NEAR(y[1], 1.0, 1e-12);
}

TEST(BestFixedPoint, DenseHighDimensionUnsupported) {
  Vector a(9, 0.5);
  const OnlineProblem p = OnlineProblem::quadratic(a, {1.0, 1.0, 1.0}, BoxDomain::cube(3, -1, 1));
  EXPECT_THROW(best_fixed_point(p, 1), CapabilityError);
}

Trajectory constant_trajectory(const OnlineProblem& p, double x, std::size_t T) {
  Trajectory tr;
  for (std::size_t t = 1; t <= T; ++t) {
    TraceRecord r;
    r.t = t;
    r.x = {x};
    r.cost = p.cost_and_grad(t, x).cost;
    tr.push(r);
  }
  return tr;
}

TEST(Regret, ConstantAtComparatorIsZero) {
  const OnlineProblem p = OnlineProblem::reddi(3.0);
  EXPECT_EQ(regret(constant_trajectory(p, -1.0, 30), p, 30), 0.0);
}

TEST(Regret, ReddiAtPlusOne) {
  const OnlineProblem p = OnlineProblem::reddi(3.0);
  EXPECT_DOUBLE_EQ(regret(constant_trajectory(p, 1.0, 3), p, 3), 2.0);
}

TEST(Regret, TooShortTrajectory) {
  const OnlineProblem p = OnlineProblem::reddi(3.0);
  EXPECT_THROW(regret(constant_trajectory(p, 1.0, 3), p, 4), PreconditionError);
}

TEST(Regret, SgdAverageRegretShrinks) {
  const OnlineProblem p = OnlineProblem::reddi(3.0);
  OptimizerConfig c = make(Kind::Sgd, StepSchedule::inv_sqrt(0.1));
  c.beta1 = 0.0;
  double prev = 1e300;
  for (std::size_t T : {300u, 3000u, 30000u}) {
    const double avg = regret(run(p, c, 0.0, T), p, T) / double(T);
    EXPECT_LT(avg, prev) << "T=" << T;
    prev = avg;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Run, ZeroHorizonIsEmpty) {
  const Trajectory tr =
      run(OnlineProblem::decay(), make(Kind::Adam, StepSchedule::constant(1e-3)), 1.0, 0);
  EXPECT_TRUE(tr.empty());
  EXPECT_EQ(tr.final_x, Vector{1.0});
}

TEST(Run, SequencesAligned) {
  const Trajectory tr =
      run(OnlineProblem::reddi(), make(Kind::AdaX, StepSchedule::inv_sqrt(0.1)), 0.0, 17);
  EXPECT_EQ(tr.size(), 17u);
  EXPECT_EQ(tr.gradients.size(), 17u);
  EXPECT_EQ(tr.costs.size(), 17u);
  EXPECT_EQ(tr.steps.size(), 17u);
  EXPECT_EQ(tr.vhat_avg.size(), 17u);
  EXPECT_EQ(tr.gamma_min.size(), 17u);
}

TEST(Run, StartOutsideDomain) {
  EXPECT_THROW(run(OnlineProblem::reddi(), make(Kind::Sgd, StepSchedule::constant(0.1)), 2.0, 5),
               DomainError);
}

TEST(Run, VisitorCanStop) {
  const double x0[1] = {1.0};
  const RunSummary s = run_with(OnlineProblem::decay(),
                                make(Kind::Adam, StepSchedule::constant(1e-3)), x0, 100000,
                                [](const TraceRecord& r) { return r.x_next[0] >= 0.0; });
  EXPECT_EQ(s.steps, 1023u);
  EXPECT_LT(s.final_x[0], 0.0);
}

TEST(Run, AdamCrossesZero) {
  for (double b1 : {0.0, 0.9}) {
    OptimizerConfig c = make(Kind::Adam, StepSchedule::constant(1e-3));
    c.beta1 = b1;
    const auto cross = oracle::first_crossing(run(OnlineProblem::decay(), c, 1.0, 3000));
    ASSERT_TRUE(cross.has_value());
    EXPECT_GT(*cross, 1000u);
    EXPECT_LT(*cross, 1100u);
  }
}

TEST(Run, AdaxSettlesNearOptimum) {
  const OptimizerConfig c = make(Kind::AdaX, StepSchedule::constant(5e-3));
  const Trajectory tr = run(OnlineProblem::decay(), c, 1.0, 20000);
  // x < 0 is flat for t > 1; only the remaining momentum moves it further.
  const auto cross = oracle::first_crossing(tr);
  ASSERT_TRUE(cross.has_value());
  EXPECT_LT(*cross, 1000u);
  EXPECT_LT(tr.final_x[0], 0.0);
  EXPECT_GT(tr.final_x[0], -0.1);
}

TEST(Run, AdaxSmallStepNeverCrosses) {
  // alpha * 1.7320 * sum lambda^(t-1) < x0 with beta1 = 0.
  OptimizerConfig c = make(Kind::AdaX, StepSchedule::constant(5e-5));
  c.beta1 = 0.0;
  const Trajectory tr = run(OnlineProblem::decay(), c, 1.0, 100000);
  EXPECT_FALSE(oracle::first_crossing(tr).has_value());
  EXPECT_GT(tr.final_x[0], 1.0 - 5e-5 * 1.7320 * 1e4);
}

// ------------------------------------------------------------- properties

TEST(Property, IteratesStayInDomain) {
  Rng rng = make_rng(5, Stream::Property);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<OnlineProblem> problems = {
      OnlineProblem::reddi(3.0), OnlineProblem::decay(1e-3, 0.9999, 1),
      OnlineProblem::decay(2.0, 0.9, 3),
      OnlineProblem::quadratic({4.0, 0.0, 0.0, 1.0}, {30.0, -30.0}, BoxDomain::cube(2, -1, 1))};
  for (Kind k : {Kind::Sgd, Kind::Sgdm, Kind::AdaGrad, Kind::RmsProp, Kind::Adam,
                 Kind::AmsGrad, Kind::AdaX, Kind::Padam, Kind::Padax}) {
    for (const OnlineProblem& p : problems) {
      Vector x0(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) {
        const double lo = p.domain().lower[i], hi = p.domain().upper[i];
        x0[i] = lo + (hi - lo) * u(rng);
      }
      const Trajectory tr = run(p, make(k, StepSchedule::constant(0.5)), x0, 200);
      for (const Vector& x : tr.iterates) ASSERT_TRUE(p.domain().contains(x)) << to_string(k);
      ASSERT_TRUE(p.domain().contains(tr.final_x));
    }
  }
}

TEST(Property, DecayGradientMass) {
  const OnlineProblem p = OnlineProblem::decay(1e-3, 0.9999, 1);
  const Trajectory tr = run(p, make(Kind::AdaX, StepSchedule::constant(5e-3)), 1.0, 20000);
  double mass = 0.0;
  for (std::size_t t = 1; t <= tr.size(); ++t) {
    const double g = tr.gradients[t - 1][0];
    ASSERT_GE(g, 0.0);
    ASSERT_LE(g, 1e-3 * std::pow(0.9999, double(t - 1)) * (1.0 + 1e-15));
    mass += g;
  }
  EXPECT_LE(mass, 1e-3 / (1.0 - 0.9999));
}

TEST(Property, InitializationIndependence) {
  const OnlineProblem p = OnlineProblem::decay();
  OptimizerConfig adax = make(Kind::AdaX, StepSchedule::constant(5e-5));
  adax.beta1 = 0.0;
  OptimizerConfig sgdm = make(Kind::Sgdm, StepSchedule::constant(1e-2));
  for (const OptimizerConfig& c : {adax, sgdm}) {
    const Trajectory a = run(p, c, 1.0, 5000);
    const Trajectory b = run(p, c, 2.5, 5000);
    ASSERT_FALSE(oracle::first_crossing(a).has_value());
    for (std::size_t t = 0; t < a.size(); ++t)
      ASSERT_EQ(a.steps[t].delta, b.steps[t].delta) << to_string(c.kind) << " t=" << t + 1;
  }
}

}  // namespace
}  // namespace adax

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

#ifndef ADAX_PROBLEMS_REGRET_HPP
#define ADAX_PROBLEMS_REGRET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "adax/errors.hpp"
#include "adax/problems/online_problem.hpp"
#include "adax/problems/trajectory.hpp"

namespace adax {

namespace detail {

inline double quadratic_value(const Quadratic& q, std::span<const double> x) {
  const std::size_t d = q.b.size();
  double f = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < d; ++j) ax += q.a[i * d + j] * x[j];
    f += 0.5 * x[i] * ax - q.b[i] * x[i];
  }
  return f;
}

inline bool is_diagonal(const Quadratic& q) {
  const std::size_t d = q.b.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && q.a[i * d + j] != 0.0) return false;
  return true;
}

inline Vector diagonal_quadratic_argmin(const Quadratic& q, const BoxDomain& box) {
  const std::size_t d = q.b.size();
  Vector x(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double aii = q.a[i * d + i];
    const double lo = box.lower[i], hi = box.upper[i];
    if (aii > 0.0) {
      x[i] = std::clamp(q.b[i] / aii, lo, hi);
      continue;
    }
    // Linear or concave along this axis: the minimum sits on an endpoint.
    auto f = [&](double z) { return 0.5 * aii * z * z - q.b[i] * z; };
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      if (aii == 0.0 && q.b[i] == 0.0) {
        x[i] = std::clamp(0.0, lo, hi);
        continue;
      }
      throw DomainError("best_fixed_point: objective unbounded below on this box");
    }
    x[i] = f(lo) <= f(hi) ? lo : hi;
  }
  return x;
}

// Dense grid followed by repeated zooming around the incumbent.
inline Vector grid_argmin(const Quadratic& q, const BoxDomain& box) {
  const std::size_t d = q.b.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (!std::isfinite(box.lower[i]) || !std::isfinite(box.upper[i]))
      throw CapabilityError("best_fixed_point: grid search needs a bounded box");
  }
  constexpr int kPoints = 201;
  constexpr int kRounds = 12;
  Vector lo = box.lower, hi = box.upper;
  Vector best(d), x(d);
  double best_f = std::numeric_limits<double>::infinity();
  for (int round = 0; round < kRounds; ++round) {
    const int ny = d == 2 ? kPoints : 1;
    for (int a = 0; a < kPoints; ++a) {
      x[0] = lo[0] + (hi[0] - lo[0]) * a / (kPoints - 1);
      for (int b = 0; b < ny; ++b) {
        if (d == 2) x[1] = lo[1] + (hi[1] - lo[1]) * b / (kPoints - 1);
        const double f = quadratic_value(q, x);
        if (f < best_f) {
          best_f = f;
          best = x;
        }
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double half = (hi[i] - lo[i]) / 10.0;
      lo[i] = std::max(box.lower[i], best[i] - half);
      hi[i] = std::min(box.upper[i], best[i] + half);
    }
  }
  return best;
}

}  // namespace detail

/**
 * Best fixed comparator argmin_{x in box} sum_{t<=T} f_t(x).
 *
 * Reddi: the summed slope C * #{t = 1 mod 3} - #{others} is positive for
 * C > 2, giving -1. Decay: 0. Quadratic: exact per-coordinate clamp for a
 * diagonal A, grid search otherwise (d <= 2 only).
 */
inline Vector best_fixed_point(const OnlineProblem& problem, std::size_t horizon) {
  if (horizon == 0) throw PreconditionError("best_fixed_point: T must be >= 1");
  const auto& spec = problem.spec();
  if (const auto* r = std::get_if<Reddi>(&spec)) {
    const double heavy = static_cast<double>((horizon + 2) / 3);
    const double light = static_cast<double>(horizon) - heavy;
    const double slope = r->c * heavy - light;
    return {slope > 0.0 ? -1.0 : (slope < 0.0 ? 1.0 : 0.0)};
  }
  if (std::holds_alternative<Decay>(spec)) return {0.0};
  const auto& q = std::get<Quadratic>(spec);
  if (detail::is_diagonal(q)) return detail::diagonal_quadratic_argmin(q, problem.domain());
  if (q.b.size() > 2)
    throw CapabilityError("best_fixed_point: dense quadratic only supported for d <= 2");
  return detail::grid_argmin(q, problem.domain());
}

/// R_T = sum_{t<=T} f_t(x_t) - f_t(theta*).
inline double regret(const Trajectory& traj, const OnlineProblem& problem,
                     std::size_t horizon) {
  if (traj.size() < horizon) throw PreconditionError("regret: trajectory shorter than T");
  if (horizon == 0) return 0.0;
  const Vector best = best_fixed_point(problem, horizon);
  double r = 0.0;
  for (std::size_t t = 1; t <= horizon; ++t)
    r += traj.costs[t - 1] - problem.cost_and_grad(t, best).cost;
  return r;
}

}  // namespace adax

#endif  // ADAX_PROBLEMS_REGRET_HPP

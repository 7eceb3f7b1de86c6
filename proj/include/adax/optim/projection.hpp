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

#ifndef ADAX_OPTIM_PROJECTION_HPP
#define ADAX_OPTIM_PROJECTION_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>

#include "adax/errors.hpp"
#include "adax/optim/config.hpp"
#include "adax/optim/moments.hpp"

namespace adax {

/// Axis-aligned box [lower, upper]. Infinite bounds are allowed.
struct BoxDomain {
  Vector lower;
  Vector upper;

  BoxDomain() = default;
  BoxDomain(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
    detail::require_same_length(lower.size(), upper.size(), "BoxDomain");
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (!(lower[i] <= upper[i]))
        throw PreconditionError("BoxDomain: lower > upper at coordinate " +
                                std::to_string(i));
    }
  }

  static BoxDomain interval(double lo, double hi) { return {{lo}, {hi}}; }

  static BoxDomain cube(std::size_t d, double lo, double hi) {
    return {Vector(d, lo), Vector(d, hi)};
  }

  static BoxDomain unbounded(std::size_t d) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return cube(d, -inf, inf);
  }

  std::size_t dim() const { return lower.size(); }

  bool contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    return true;
  }
};

/**
 * Weighted projection argmin_{x in box} ||sqrt(M)(x - y)|| with M = diag(vhat).
 *
 * For a diagonal weight the objective separates per coordinate, so every
 * coordinate is clamped into [lower_i, upper_i] independently of its weight.
 * A zero weight leaves every feasible value optimal; clamping is used then too.
 */
inline Vector project_box(std::span<const double> y, const BoxDomain& domain,
                          std::span<const double> vhat) {
  detail::require_same_length(y.size(), domain.dim(), "project_box");
  detail::require_same_length(y.size(), vhat.size(), "project_box");
  Vector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    x[i] = std::clamp(y[i], domain.lower[i], domain.upper[i]);
  return x;
}

}  // namespace adax

#endif  // ADAX_OPTIM_PROJECTION_HPP

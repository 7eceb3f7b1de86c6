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

#ifndef ADAX_ORACLE_DIAGNOSTICS_HPP
#define ADAX_ORACLE_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>

#include "adax/errors.hpp"
#include "adax/optim/moments.hpp"
#include "adax/problems/trajectory.hpp"

namespace adax::oracle {

struct DiagnosticRecord {
  std::size_t t = 0;
  double gamma_min = 0.0;
  double vhat_avg = 0.0;
  double update_norm = 0.0;
};

/// Diagonal of sqrt(V_t)/alpha_t - sqrt(V_{t-1})/alpha_{t-1}. A negative
/// entry means the effective learning rate grew at that coordinate.
inline Vector gamma_diag(std::span<const double> vhat_t,
                         std::span<const double> vhat_prev, double alpha_t,
                         double alpha_prev) {
  detail::require_same_length(vhat_t.size(), vhat_prev.size(), "gamma_diag");
  if (!(alpha_t > 0.0) || !(alpha_prev > 0.0))
    throw PreconditionError("gamma_diag: step sizes must be positive");
  Vector out(vhat_t.size());
  for (std::size_t i = 0; i < vhat_t.size(); ++i)
    out[i] = std::sqrt(vhat_t[i]) / alpha_t - std::sqrt(vhat_prev[i]) / alpha_prev;
  return out;
}

/// ||sqrt(vhat)||_1 / N.
inline double avg_second_moment(std::span<const double> vhat) {
  if (vhat.empty()) return 0.0;
  double sum = 0.0;
  for (double v : vhat) sum += std::sqrt(v);
  return sum / static_cast<double>(vhat.size());
}

inline double min_entry(std::span<const double> v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}

/// Smallest 1-based t with x_t < 0 over a sequence of scalar iterates.
inline std::optional<std::size_t> first_crossing(std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] < 0.0) return i + 1;
  return std::nullopt;
}

/// Same over a one-dimensional trajectory's iterates x_1..x_T followed by
/// the final iterate x_{T+1}.
inline std::optional<std::size_t> first_crossing(const Trajectory& traj) {
  for (std::size_t i = 0; i < traj.iterates.size(); ++i) {
    if (traj.iterates[i].size() != 1)
      throw PreconditionError("first_crossing: trajectory must be one-dimensional");
    if (traj.iterates[i][0] < 0.0) return i + 1;
  }
  if (traj.final_x.size() == 1 && traj.final_x[0] < 0.0) return traj.iterates.size() + 1;
  return std::nullopt;
}

}  // namespace adax::oracle

#endif  // ADAX_ORACLE_DIAGNOSTICS_HPP

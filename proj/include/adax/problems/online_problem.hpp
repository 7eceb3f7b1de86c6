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

#ifndef ADAX_PROBLEMS_ONLINE_PROBLEM_HPP
#define ADAX_PROBLEMS_ONLINE_PROBLEM_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <variant>

#include "adax/errors.hpp"
#include "adax/optim/config.hpp"
#include "adax/optim/projection.hpp"

namespace adax {

/// f_t(x) = C x when t mod 3 == 1, -x otherwise, on [-1, 1]. Requires C > 2.
struct Reddi {
  double c = 3.0;
};

/**
 * Exponentially decaying gradient problem on [-2, C/(1-lambda)]:
 * f_t(x) = |C lambda^(t-1) x| for t <= n, and for t > n
 * f_t(x) = C lambda^(t-1) x on x >= 0 and 0 on x < 0.
 */
struct Decay {
  double c = 1e-3;
  double lambda = 0.9999;
  std::size_t n = 1;
};

/// Time-invariant f(x) = 1/2 x^T A x - b^T x, A row-major d x d.
struct Quadratic {
  Vector a;
  Vector b;
};

struct CostGrad {
  double cost;
  Vector grad;
};

class OnlineProblem {
 public:
  using Spec = std::variant<Reddi, Decay, Quadratic>;

  static OnlineProblem reddi(double c = 3.0) {
    if (!(c > 2.0)) throw PreconditionError("reddi: C must be > 2");
    return OnlineProblem(Reddi{c}, BoxDomain::interval(-1.0, 1.0));
  }

  // Any C > 0 is accepted; the classic statement asks for C > 1 but the
  // reference experiment runs with C = 1e-3.
  static OnlineProblem decay(double c = 1e-3, double lambda = 0.9999,
                             std::size_t n = 1) {
    if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("decay: C must be > 0");
    if (!(lambda > 0.0 && lambda < 1.0))
      throw PreconditionError("decay: lambda must lie in (0, 1)");
    if (n < 1) throw PreconditionError("decay: n must be >= 1");
    return OnlineProblem(Decay{c, lambda, n},
                         BoxDomain::interval(-2.0, c / (1.0 - lambda)));
  }

  static OnlineProblem quadratic(Vector a, Vector b, BoxDomain domain) {
    const std::size_t d = b.size();
    if (a.size() != d * d)
      throw DimensionError("quadratic: A must be d x d with d = len(b)");
    detail::require_same_length(domain.dim(), d, "quadratic domain");
    return OnlineProblem(Quadratic{std::move(a), std::move(b)}, std::move(domain));
  }

  const Spec& spec() const { return spec_; }
  const BoxDomain& domain() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }

  /// Cost f_t(x) and the subgradient used by the optimizers. Throws
  /// DomainError for x outside the box.
  CostGrad cost_and_grad(std::size_t t, std::span<const double> x) const {
    if (t == 0) throw PreconditionError("cost_and_grad: t starts at 1");
    if (!domain_.contains(x)) {
      std::string where = x.size() == 1 ? " x = " + std::to_string(x[0]) : "";
      throw DomainError("cost_and_grad: point outside the domain" + where);
    }
    return std::visit([&](const auto& p) { return eval(p, t, x); }, spec_);
  }

  /// Convenience for the one-dimensional problems.
  CostGrad cost_and_grad(std::size_t t, double x) const {
    const double xs[1] = {x};
    return cost_and_grad(t, std::span<const double>(xs, 1));
  }

  std::string describe() const;

 private:
  OnlineProblem(Spec s, BoxDomain d) : spec_(std::move(s)), domain_(std::move(d)) {}

  static CostGrad eval(const Reddi& p, std::size_t t, std::span<const double> x) {
    const double slope = t % 3 == 1 ? p.c : -1.0;
    return {slope * x[0], {slope}};
  }

  static CostGrad eval(const Decay& p, std::size_t t, std::span<const double> x) {
    const double scale = p.c * std::pow(p.lambda, static_cast<double>(t - 1));
    const double xi = x[0];
    if (t <= p.n) {
      const double sign = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
      return {std::abs(scale * xi), {scale * sign}};
    }
    // x = 0 takes the zero subgradient so the optimum is a fixed point.
    if (xi > 0.0) return {scale * xi, {scale}};
    return {0.0, {0.0}};
  }

  static CostGrad eval(const Quadratic& p, std::size_t, std::span<const double> x) {
    const std::size_t d = p.b.size();
    CostGrad out{0.0, Vector(d, 0.0)};
    for (std::size_t i = 0; i < d; ++i) {
      double ax = 0.0;
      for (std::size_t j = 0; j < d; ++j) ax += p.a[i * d + j] * x[j];
      out.grad[i] = ax - p.b[i];
      out.cost += 0.5 * x[i] * ax - p.b[i] * x[i];
    }
    return out;
  }

  Spec spec_;
  BoxDomain domain_;
};

inline std::string OnlineProblem::describe() const {
  struct Visitor {
    std::string operator()(const Reddi& p) const {
      return "reddi(C=" + std::to_string(p.c) + ")";
    }
    std::string operator()(const Decay& p) const {
      return "decay(C=" + std::to_string(p.c) + ", lambda=" + std::to_string(p.lambda) +
             ", n=" + std::to_string(p.n) + ")";
    }
    std::string operator()(const Quadratic& p) const {
      return "quadratic(d=" + std::to_string(p.b.size()) + ")";
    }
  };
  return std::visit(Visitor{}, spec_);
}

}  // namespace adax

#endif  // ADAX_PROBLEMS_ONLINE_PROBLEM_HPP

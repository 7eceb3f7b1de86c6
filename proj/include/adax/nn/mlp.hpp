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

#ifndef ADAX_NN_MLP_HPP
#define ADAX_NN_MLP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "adax/errors.hpp"
#include "adax/nn/dataset.hpp"
#include "adax/optim/config.hpp"
#include "adax/rng.hpp"

namespace adax::nn {

/**
 * One-hidden-layer tanh network, softmax output.
 *
 * Parameters live in one flat vector laid out as
 *   W1 (d x h, row-major) | b1 (h) | W2 (h x k, row-major) | b2 (k)
 * and gradients use the same layout.
 */
struct MlpShape {
  std::size_t d = 0;
  std::size_t h = 32;
  std::size_t k = 0;

  std::size_t w1() const { return 0; }
  std::size_t b1() const { return d * h; }
  std::size_t w2() const { return d * h + h; }
  std::size_t b2() const { return d * h + h + h * k; }
  std::size_t size() const { return d * h + h + h * k + k; }
};

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases.
inline Vector init_params(const MlpShape& s, std::uint64_t seed) {
  Vector p(s.size(), 0.0);
  Rng rng = make_rng(seed, Stream::Init);
  std::uniform_real_distribution<double> u1(-1.0 / std::sqrt(double(s.d)),
                                            1.0 / std::sqrt(double(s.d)));
  std::uniform_real_distribution<double> u2(-1.0 / std::sqrt(double(s.h)),
                                            1.0 / std::sqrt(double(s.h)));
  for (std::size_t i = 0; i < s.d * s.h; ++i) p[s.w1() + i] = u1(rng);
  for (std::size_t i = 0; i < s.h * s.k; ++i) p[s.w2() + i] = u2(rng);
  return p;
}

struct LossGrad {
  double loss;
  Vector grads;
};

namespace detail {

// Hidden activations and class probabilities for one sample.
inline void forward_one(std::span<const double> p, const MlpShape& s,
                        const double* x, double* hidden, double* probs) {
  for (std::size_t j = 0; j < s.h; ++j) {
    double z = p[s.b1() + j];
    for (std::size_t i = 0; i < s.d; ++i) z += x[i] * p[s.w1() + i * s.h + j];
    hidden[j] = std::tanh(z);
  }
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < s.k; ++c) {
    double z = p[s.b2() + c];
    for (std::size_t j = 0; j < s.h; ++j) z += hidden[j] * p[s.w2() + j * s.k + c];
    probs[c] = z;
    zmax = std::max(zmax, z);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < s.k; ++c) {
    probs[c] = std::exp(probs[c] - zmax);
    total += probs[c];
  }
  for (std::size_t c = 0; c < s.k; ++c) probs[c] /= total;
}

}  // namespace detail

/// Mean softmax cross-entropy over `batch` and its analytic gradient.
inline LossGrad forward_backward(std::span<const double> params, const MlpShape& s,
                                 const Dataset& data,
                                 std::span<const std::size_t> batch) {
  if (batch.empty()) throw PreconditionError("forward_backward: empty batch");
  if (params.size() != s.size())
    throw DimensionError("forward_backward: parameter vector has wrong length");

  LossGrad out{0.0, Vector(s.size(), 0.0)};
  std::vector<double> hidden(s.h), probs(s.k), dhidden(s.h);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (std::size_t idx : batch) {
    const double* x = data.row(idx);
    const auto y = static_cast<std::size_t>(data.labels[idx]);
    detail::forward_one(params, s, x, hidden.data(), probs.data());
    out.loss -= std::log(std::max(probs[y], 1e-300)) * inv_n;

    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (std::size_t c = 0; c < s.k; ++c) {
      const double dz = (probs[c] - (c == y ? 1.0 : 0.0)) * inv_n;
      out.grads[s.b2() + c] += dz;
      for (std::size_t j = 0; j < s.h; ++j) {
        out.grads[s.w2() + j * s.k + c] += hidden[j] * dz;
        dhidden[j] += params[s.w2() + j * s.k + c] * dz;
      }
    }
    for (std::size_t j = 0; j < s.h; ++j) {
      const double dz = dhidden[j] * (1.0 - hidden[j] * hidden[j]);
      out.grads[s.b1() + j] += dz;
      for (std::size_t i = 0; i < s.d; ++i) out.grads[s.w1() + i * s.h + j] += x[i] * dz;
    }
  }
  if (!std::isfinite(out.loss)) throw NumericError(0, "non-finite loss");
  return out;
}

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Mean loss and accuracy over the given sample indices.
inline Evaluation evaluate(std::span<const double> params, const MlpShape& s,
                           const Dataset& data, std::span<const std::size_t> idx) {
  Evaluation e;
  if (idx.empty()) return e;
  std::vector<double> hidden(s.h), probs(s.k);
  std::size_t correct = 0;
  for (std::size_t i : idx) {
    detail::forward_one(params, s, data.row(i), hidden.data(), probs.data());
    const auto y = static_cast<std::size_t>(data.labels[i]);
    e.loss -= std::log(std::max(probs[y], 1e-300));
    const auto pred = static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    if (pred == y) ++correct;
  }
  const double n = static_cast<double>(idx.size());
  e.loss /= n;
  e.accuracy = static_cast<double>(correct) / n;
  return e;
}

}  // namespace adax::nn

#endif  // ADAX_NN_MLP_HPP

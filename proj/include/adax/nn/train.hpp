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

#ifndef ADAX_NN_TRAIN_HPP
#define ADAX_NN_TRAIN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adax/errors.hpp"
#include "adax/nn/dataset.hpp"
#include "adax/nn/mlp.hpp"
#include "adax/optim/step.hpp"
#include "adax/oracle/diagnostics.hpp"
#include "adax/rng.hpp"

namespace adax::nn {

struct TrainOptions {
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  std::size_t hidden = 32;
  std::uint64_t seed = 0;
};

/**
 * Outcome of one training run.
 *
 * Per-epoch vectors have epochs + 1 entries; entry 0 is the untrained
 * network. Per-iteration vectors have one entry per optimizer step;
 * `vhat_avg` stays empty for SGD and SGDM. When a numeric failure stops the
 * run, `error` is set and the vectors hold what was completed.
 */
struct TrainReport {
  std::vector<double> train_loss;
  std::vector<double> test_loss;
  std::vector<double> train_acc;
  std::vector<double> test_acc;
  std::vector<double> iter_loss;
  std::vector<std::size_t> iter_epoch;
  std::vector<double> vhat_avg;
  std::uint64_t checksum = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::optional<std::string> error;
  Vector params;

  std::size_t iterations() const { return iter_loss.size(); }
};

/// FNV-1a over the bit patterns of `params`.
inline std::uint64_t params_checksum(std::span<const double> params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double p : params) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &p, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

/// Mini-batch training without projection. Batch order is reshuffled every
/// epoch from the shuffle stream of `opts.seed`; initial weights come from
/// the init stream.
inline TrainReport train(const OptimizerConfig& config, const Dataset& data,
                         const TrainOptions& opts) {
  config.validate();
  if (opts.batch_size == 0 || opts.batch_size > data.train.size())
    throw PreconditionError("train: batch_size must lie in [1, train size]");

  const MlpShape shape{data.d, opts.hidden, data.k};
  TrainReport rep;
  rep.seed = opts.seed;
  rep.config = config_entries(config);
  rep.params = init_params(shape, opts.seed);

  auto record_epoch = [&]() {
    const Evaluation tr = evaluate(rep.params, shape, data, data.train);
    const Evaluation te = evaluate(rep.params, shape, data, data.test);
    rep.train_loss.push_back(tr.loss);
    rep.train_acc.push_back(tr.accuracy);
    rep.test_loss.push_back(te.loss);
    rep.test_acc.push_back(te.accuracy);
  };
  record_epoch();

  Optimizer opt(config, shape.size());
  Rng shuffle_rng = make_rng(opts.seed, Stream::Shuffle);
  std::vector<std::size_t> order = data.train;
  const bool adaptive = is_adaptive(config.kind);

  for (std::size_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size(); start += opts.batch_size) {
      const std::size_t len = std::min(opts.batch_size, order.size() - start);
      const std::span<const std::size_t> batch(order.data() + start, len);
      try {
        LossGrad lg = forward_backward(rep.params, shape, data, batch);
        StepResult r = opt.step(rep.params, lg.grads);
        rep.params = std::move(r.x_raw);
        rep.iter_loss.push_back(lg.loss);
        rep.iter_epoch.push_back(epoch);
        if (adaptive) rep.vhat_avg.push_back(oracle::avg_second_moment(r.step.vhat));
      } catch (const NumericError& e) {
        rep.error = "iteration " + std::to_string(rep.iterations() + 1) + ": " + e.what();
        rep.checksum = params_checksum(rep.params);
        return rep;
      }
    }
    record_epoch();
  }
  rep.checksum = params_checksum(rep.params);
  return rep;
}

}  // namespace adax::nn

#endif  // ADAX_NN_TRAIN_HPP

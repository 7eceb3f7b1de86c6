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

#ifndef ADAX_NN_DATASET_HPP
#define ADAX_NN_DATASET_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "adax/errors.hpp"
#include "adax/format.hpp"
#include "adax/optim/config.hpp"
#include "adax/rng.hpp"

namespace adax::nn {

/// Row-major feature matrix with integer labels and a train/test split.
struct Dataset {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  Vector features;
  std::vector<int> labels;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  const double* row(std::size_t i) const { return features.data() + i * d; }
};

/// Shuffles 0..n-1 with the split stream and puts the first 80% in train.
inline void split_80_20(Dataset& ds, std::uint64_t seed) {
  std::vector<std::size_t> idx(ds.n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng = make_rng(seed, Stream::Split);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t n_train = ds.n * 4 / 5;
  ds.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  ds.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
}

/**
 * k Gaussian clusters in d dimensions. Class means are drawn uniformly from
 * [-1, 1]^d; each sample is its class mean plus spread * N(0, I). Sample i
 * has label i mod k, so classes are balanced whenever k divides n.
 */
inline Dataset make_blobs(std::uint64_t seed, std::size_t n, std::size_t d,
                          std::size_t k, double spread) {
  if (k < 2 || n < k) throw PreconditionError("make_blobs: requires n >= k >= 2");
  if (d == 0) throw PreconditionError("make_blobs: d must be positive");
  if (!(spread >= 0.0)) throw PreconditionError("make_blobs: spread must be >= 0");

  Dataset ds;
  ds.n = n;
  ds.d = d;
  ds.k = k;
  Rng mean_rng = make_rng(seed, Stream::ClassMeans);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector means(k * d);
  for (double& m : means) m = unif(mean_rng);

  Rng sample_rng = make_rng(seed, Stream::Samples);
  std::normal_distribution<double> normal(0.0, 1.0);
  ds.features.resize(n * d);
  ds.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % k;
    ds.labels[i] = static_cast<int>(c);
    for (std::size_t j = 0; j < d; ++j)
      ds.features[i * d + j] = means[c * d + j] + spread * normal(sample_rng);
  }
  split_80_20(ds, seed);
  return ds;
}

/// CSV with header f0,...,f{d-1},label. Values use shortest round-trip form.
inline void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_csv: cannot open " + path);
  for (std::size_t j = 0; j < ds.d; ++j) out << 'f' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < ds.n; ++i) {
    for (std::size_t j = 0; j < ds.d; ++j)
      out << format_double(ds.features[i * ds.d + j]) << ',';
    out << ds.labels[i] << '\n';
  }
  if (!out) throw Error("write_csv: write failed for " + path);
}

/// Reads the write_csv format. The split is recreated from `split_seed`;
/// k is one more than the largest label.
inline Dataset read_csv(const std::string& path, std::uint64_t split_seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("read_csv: empty file " + path);

  Dataset ds;
  {
    std::stringstream header(line);
    std::string cell;
    std::vector<std::string> cols;
    while (std::getline(header, cell, ',')) cols.push_back(cell);
    if (cols.size() < 2 || cols.back() != "label")
      throw Error("read_csv: header must end with 'label'");
    for (std::size_t j = 0; j + 1 < cols.size(); ++j) {
      if (cols[j] != "f" + std::to_string(j))
        throw Error("read_csv: unexpected column '" + cols[j] + "'");
    }
    ds.d = cols.size() - 1;
  }

  int max_label = -1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t j = 0; j <= ds.d; ++j) {
      const char* stop = std::find(p, end, ',');
      if ((j < ds.d) == (stop == end))
        throw Error("read_csv: wrong column count on line " + std::to_string(line_no));
      if (j < ds.d) {
        double v = 0.0;
        auto r = std::from_chars(p, stop, v);
        if (r.ec != std::errc() || r.ptr != stop)
          throw Error("read_csv: bad number on line " + std::to_string(line_no));
        ds.features.push_back(v);
      } else {
        int label = 0;
        auto r = std::from_chars(p, stop, label);
        if (r.ec != std::errc() || r.ptr != stop || label < 0)
          throw Error("read_csv: bad label on line " + std::to_string(line_no));
        ds.labels.push_back(label);
        max_label = std::max(max_label, label);
      }
      p = stop == end ? end : stop + 1;
    }
  }
  ds.n = ds.labels.size();
  ds.k = static_cast<std::size_t>(max_label + 1);
  split_80_20(ds, split_seed);
  return ds;
}

}  // namespace adax::nn

#endif  // ADAX_NN_DATASET_HPP

// Copyright 2026 The blindeep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blindeep/signals.h"

#include <cmath>

#include "blindeep/error.h"
#include "blindeep/rng.h"

namespace blindeep {

SignalBatch sample_observations(const FilterMatrix& fm, int m, double noise_var,
                                std::uint64_t seed, std::string filter_label) {
  if (m < 1) throw InvalidArgument("sample_observations: m must be >= 1");
  if (noise_var < 0.0) throw InvalidArgument("sample_observations: negative noise variance");
  const Eigen::Index n = fm.matrix.rows();
  const double noise_sd = std::sqrt(noise_var);

  Eigen::MatrixXd excitation(n, m);
  Eigen::MatrixXd noise(n, m);
  for (int l = 0; l < m; ++l) {
    Rng rng(seed, static_cast<std::uint64_t>(l));
    for (Eigen::Index i = 0; i < n; ++i) excitation(i, l) = rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) noise(i, l) = noise_sd * rng.normal();
  }

  SignalBatch batch;
  batch.samples = fm.matrix * excitation + noise;
  batch.filter = std::move(filter_label);
  batch.noise_var = noise_var;
  batch.seed = seed;
  return batch;
}

CovarianceEstimate sample_covariance(const SignalBatch& batch) {
  if (batch.m() < 1) throw InvalidArgument("sample_covariance: empty batch");
  const Eigen::Index n = batch.n();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  acc.selfadjointView<Eigen::Lower>().rankUpdate(batch.samples, 1.0 / batch.m());
  CovarianceEstimate out;
  out.matrix = acc.selfadjointView<Eigen::Lower>();
  out.m = batch.m();
  return out;
}

}  // namespace blindeep

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

#ifndef BLINDEEP_SIGNALS_H_
#define BLINDEEP_SIGNALS_H_

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "blindeep/filters.h"

namespace blindeep {

struct SignalBatch {
  Eigen::MatrixXd samples;  // n x m, column l is y^l
  std::string filter;       // description of the generating filter, if known
  double noise_var = 0.0;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(samples.rows()); }
  int m() const { return static_cast<int>(samples.cols()); }
};

struct CovarianceEstimate {
  Eigen::MatrixXd matrix;
  int m = 0;
};

// y^l = H x^l + w^l with x^l ~ N(0, I) and w^l ~ N(0, noise_var I). Sample l
// draws from its own substream Rng(seed, l), so the batch does not depend on
// generation order.
SignalBatch sample_observations(const FilterMatrix& fm, int m, double noise_var,
                                std::uint64_t seed, std::string filter_label = "");

// (1/m) sum_l y^l (y^l)^T, uncentered, exactly symmetric.
CovarianceEstimate sample_covariance(const SignalBatch& batch);

}  // namespace blindeep

#endif  // BLINDEEP_SIGNALS_H_

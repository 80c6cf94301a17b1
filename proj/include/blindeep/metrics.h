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

#ifndef BLINDEEP_METRICS_H_
#define BLINDEEP_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/filters.h"
#include "blindeep/graph.h"

namespace blindeep {

struct CellCount {
  int correct = 0;
  int incorrect = 0;
};

struct EvalReport {
  double cost_fc = 0.0;
  double group_accuracy = 0.0;
  double matched_accuracy = 0.0;
  // Indexed by true cell: the found cell matched to it, split into vertices
  // that belong to that true cell and vertices that do not.
  std::vector<CellCount> per_cell;
};

// F(found, true_vecs): sum of squared row deviations from cell means.
double cost_fc(const Partition& found, const Eigen::MatrixXd& true_vecs);

// gamma = (n - C^w) / n with C^w = sum_k | |found_k| - |C_k| | after pairing
// the cells of both lists in descending size order (shorter list padded with
// zeros). Not clamped; can be negative.
double group_accuracy(std::span<const int> found_sizes, std::span<const int> true_sizes);
double group_accuracy(const Partition& found, const Partition& truth);

struct MatchResult {
  double fraction = 0.0;
  int correct = 0;
  // permutation[k] = true cell matched to found cell k (-1 if unmatched).
  std::vector<int> permutation;
};

// Best label permutation by number of correctly placed vertices. Exhaustive
// over permutations when max(r_found, r_true) <= 5, Hungarian assignment
// otherwise.
MatchResult matched_accuracy(const Partition& found, const Partition& truth);

EvalReport evaluate(const Partition& found, const Partition& truth,
                    const Eigen::MatrixXd& true_vecs);

struct DeviationDiagnostics {
  int m = 0;
  std::uint64_t seed = 0;
  double spectral_deviation = 0.0;  // ||Sigma_hat - Sigma||_2
  double effective_rank = 0.0;      // tr(Sigma) / ||Sigma||_2
  double gap_margin = 0.0;          // xi_r - xi_hat_{r+1}
};

struct DeviationScan {
  std::vector<DeviationDiagnostics> rows;  // m-major, then seed
  std::vector<int> m_values;
  std::vector<double> median_deviation;  // one per m
};

// For every (m, seed) draws a batch, forms Sigma_hat and compares it with the
// exact covariance of the same model.
DeviationScan deviation_scan(const FilterMatrix& fm, double noise_var, std::span<const int> m_list,
                             std::span<const std::uint64_t> seeds, int r);

double median(std::vector<double> values);

}  // namespace blindeep

#endif  // BLINDEEP_METRICS_H_

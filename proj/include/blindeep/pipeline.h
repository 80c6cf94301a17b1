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

#ifndef BLINDEEP_PIPELINE_H_
#define BLINDEEP_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/filters.h"
#include "blindeep/graph.h"
#include "blindeep/metrics.h"
#include "blindeep/signals.h"
#include "blindeep/solvers.h"
#include "blindeep/spectral.h"

namespace blindeep {

// Planted partition plus the structural eigenvectors of L^G used by F_c.
struct GroundTruth {
  Partition truth;
  Eigen::MatrixXd structural_vectors;

  static GroundTruth from_instance(const Graph& g, const Partition& truth);
};

struct ExtractionResult {
  IndicatorMatrix h_hat;
  Partition partition;
  SolverResult solver;
  TopREigenspace eigenspace;
  std::optional<EvalReport> eval;
  std::vector<std::string> warnings;
};

// Blind extraction: sample covariance, its top-r eigenvectors, the chosen
// solver, and partition recovery from the indicator.
ExtractionResult be_eeps(const SignalBatch& signals, int r, const SolverConfig& solver,
                         const GroundTruth* truth = nullptr);

// Same pipeline from a given covariance matrix (e.g. the exact one).
ExtractionResult be_eeps_from_covariance(const Eigen::MatrixXd& covariance, int r,
                                         const SolverConfig& solver,
                                         const GroundTruth* truth = nullptr);

// A filter as configured for experiments. With scale_by_dmax the heat sigma or
// iir alpha is divided by the maximum degree of each sampled graph.
struct FilterSetting {
  std::string name;
  GraphFilter filter;
  bool scale_by_dmax = false;

  GraphFilter resolve(int max_degree) const;
};

struct ExperimentConfig {
  PlantedSpec instance;
  std::vector<FilterSetting> filters;
  double noise_var = 0.01;
  int r = 0;
  std::vector<int> m_list;
  int trials = 50;
  std::vector<SolverConfig> solvers;
  std::uint64_t seed = 0;
  bool fixed_instance = false;
  int threads = 0;  // 0: hardware concurrency

  // trials >= 1, r >= 2, consistent instance spec, nonempty lists.
  void validate() const;
};

struct TrialRow {
  std::string solver;
  std::string filter;
  int m = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  EvalReport eval;
  int iterations = 0;
  double objective = 0.0;
};

struct AggregateRow {
  std::string solver;
  std::string filter;
  int m = 0;
  int count = 0;
  double mean_fc = 0.0;
  double mean_gamma = 0.0;
  double mean_matched = 0.0;
  double stderr_fc = 0.0;
  double stderr_gamma = 0.0;
  double stderr_matched = 0.0;
  std::vector<double> mean_correct;    // per true cell
  std::vector<double> mean_incorrect;  // per true cell
};

struct BenchmarkTable {
  std::vector<TrialRow> trials;      // trial-major, then filter, m, solver
  std::vector<AggregateRow> rows;    // filter-major, then m, solver
  int failed_trials = 0;
  std::vector<std::string> failures;
};

struct BenchmarkHooks {
  // Sees every solver result. May be called from worker threads.
  std::function<void(const SolverResult&)> on_result;
};

// Fresh planted instance per trial (unless fixed_instance), fresh signals per
// (trial, filter, m); every solver runs on the same top-r eigenvectors. Output
// is deterministic given the config and independent of thread count.
BenchmarkTable run_benchmark(const ExperimentConfig& cfg, const BenchmarkHooks& hooks = {});

struct VerifyReport {
  EepCheck check;
  std::optional<QuotientGraph> quotient;
};

VerifyReport verify(const Graph& g, const Partition& p);
// "EEP: yes" plus the quotient Laplacian, or "EEP: no" plus the witness.
std::string format_verify(const VerifyReport& report);

}  // namespace blindeep

#endif  // BLINDEEP_PIPELINE_H_

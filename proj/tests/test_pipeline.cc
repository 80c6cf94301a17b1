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

#include <atomic>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/error.h"
#include "blindeep/pipeline.h"
#include "doctest.h"
#include "fixtures.h"

namespace blindeep {
namespace {

const SolverKind kAllSolvers[] = {SolverKind::kKMeans, SolverKind::kPsnmf, SolverKind::kPenalty};

SolverConfig config(SolverKind kind) {
  SolverConfig cfg;
  cfg.kind = kind;
  cfg.seed = 3;
  return cfg;
}

ExperimentConfig small_experiment() {
  ExperimentConfig cfg;
  cfg.instance = fixtures::small_chain_spec(10, 2, 0.4);
  cfg.filters = {FilterSetting{"strong", GraphFilter::heat(10.0), true}};
  cfg.r = 3;
  cfg.m_list = {100};
  cfg.trials = 2;
  cfg.solvers = {config(SolverKind::kKMeans)};
  cfg.seed = 5;
  return cfg;
}

TEST_CASE("be_eeps recovers the partition from the exact covariance") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PlantedInstance inst = generate_planted_eep(fixtures::small_chain_spec(15, 1, 0.8), seed);
    const GroundTruth gt = GroundTruth::from_instance(inst.graph, inst.truth);
    const FilterMatrix fm = build_filter_matrix(GraphFilter::heat(10.0 / inst.graph.max_degree()), inst.graph);
    const Eigen::MatrixXd sigma = exact_covariance(fm, 0.01);
    for (SolverKind kind : kAllSolvers) {
      const ExtractionResult res = be_eeps_from_covariance(sigma, 3, config(kind), &gt);
      REQUIRE(res.eval.has_value());
      CHECK(res.eval->matched_accuracy == 1.0);
      CHECK(res.eval->cost_fc <= 1e-12);
      CHECK(same_up_to_labels(res.partition, inst.truth));
      CHECK_MESSAGE(res.warnings.empty(), solver_name(kind), ": ", res.warnings.empty() ? "" : res.warnings[0]);
    }
  }
}

TEST_CASE("be_eeps top space is structural for a strong low pass filter") {
  const PlantedInstance inst = generate_planted_eep(fixtures::small_chain_spec(20, 1, 0.8), 2);
  const FilterMatrix fm = build_filter_matrix(GraphFilter::heat(10.0 / inst.graph.max_degree()), inst.graph);
  const ExtractionResult res = be_eeps_from_covariance(exact_covariance(fm, 0.0), 3, config(SolverKind::kKMeans));
  CHECK(structural_residual(res.eigenspace.vectors, inst.truth) <= 1e-6);
  CHECK_FALSE(res.eval.has_value());
}

TEST_CASE("be_eeps on tiny batches and degenerate spectra") {
  const PlantedInstance inst = generate_planted_eep(fixtures::small_chain_spec(10, 2, 0.4), 1);
  const GroundTruth gt = GroundTruth::from_instance(inst.graph, inst.truth);
  const FilterMatrix fm = build_filter_matrix(GraphFilter::heat(0.5), inst.graph);
  for (SolverKind kind : kAllSolvers) {
    const ExtractionResult res = be_eeps(sample_observations(fm, 1, 0.01, 4), 3, config(kind), &gt);
    REQUIRE(res.eval.has_value());
    CHECK(res.eval->matched_accuracy >= 1.0 / 3.0);
    CHECK(res.eval->matched_accuracy <= 1.0);
    CHECK(check_feasibility(res.h_hat.normalized).ok);
  }

  const ExtractionResult flat = be_eeps_from_covariance(Eigen::MatrixXd::Identity(6, 6), 2, config(SolverKind::kKMeans));
  CHECK(flat.eigenspace.boundary_tie);
  CHECK_FALSE(flat.warnings.empty());

  CHECK_THROWS_AS(be_eeps_from_covariance(Eigen::MatrixXd::Identity(3, 3), 3, config(SolverKind::kKMeans)),
                  InvalidArgument);
}

// The structural eigenvalues of this graph are 0, 4 - sqrt(5) and 4 + sqrt(5),
// while the three smallest Laplacian eigenvalues are 0, 0.438 and 0.628.
TEST_CASE("worked example recovery with a heat filter") {
  const Graph g = fixtures::worked_example_graph();
  const Partition p = fixtures::worked_example_partition();
  const GroundTruth gt = GroundTruth::from_instance(g, p);
  const FilterMatrix fm = build_filter_matrix(GraphFilter::heat(1.0), g);
  for (SolverKind kind : kAllSolvers) {
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ExtractionResult res = be_eeps(sample_observations(fm, 5000, 0.01, seed), 3, config(kind), &gt);
      exact += res.eval->matched_accuracy == 1.0;
    }
    CHECK_MESSAGE(exact >= 45, solver_name(kind));
  }
}

TEST_CASE("filter settings resolve against the maximum degree") {
  const FilterSetting strong{"strong", GraphFilter::heat(10.0), true};
  CHECK(strong.resolve(20).sigma_f == doctest::Approx(0.5));
  const FilterSetting weak{"weak", GraphFilter::iir(0.5), true};
  CHECK(weak.resolve(10).alpha == doctest::Approx(0.05));
  const FilterSetting fixed{"fixed", GraphFilter::heat(2.0), false};
  CHECK(fixed.resolve(20).sigma_f == 2.0);
  CHECK_THROWS_AS(strong.resolve(0), InvalidArgument);
}

TEST_CASE("experiment validation") {
  CHECK_NOTHROW(small_experiment().validate());
  ExperimentConfig cfg = small_experiment();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_experiment();
  cfg.r = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_experiment();
  cfg.m_list.clear();
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_experiment();
  cfg.solvers.clear();
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_experiment();
  cfg.m_list = {0};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_experiment();
  cfg.instance.cross_degrees(0, 1) = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("benchmark counting contract") {
  const BenchmarkTable t = run_benchmark(small_experiment());
  CHECK(t.trials.size() == 2);
  CHECK(t.rows.size() == 1);
  CHECK(t.rows[0].count == 2);
  CHECK(t.failed_trials == 0);
  CHECK(t.trials[0].trial == 0);
  CHECK(t.trials[1].trial == 1);

  ExperimentConfig cfg = small_experiment();
  cfg.filters.push_back(FilterSetting{"weak", GraphFilter::iir(0.5), true});
  cfg.m_list = {50, 200};
  cfg.solvers = {config(SolverKind::kKMeans), config(SolverKind::kPsnmf), config(SolverKind::kPenalty)};
  cfg.trials = 3;
  std::atomic<int> seen{0};
  std::atomic<int> infeasible{0};
  BenchmarkHooks hooks;
  hooks.on_result = [&](const SolverResult& res) {
    ++seen;
    if (!check_feasibility(res.h_hat.normalized).ok) ++infeasible;
  };
  const BenchmarkTable big = run_benchmark(cfg, hooks);
  CHECK(big.rows.size() == 3 * 2 * 2);
  CHECK(big.trials.size() == 3 * 3 * 2 * 2);
  CHECK(seen == 36);
  CHECK(infeasible == 0);
  CHECK(big.rows[0].filter == "strong");
  CHECK(big.rows[0].m == 50);
  CHECK(big.rows[0].solver == "kmeans");
  CHECK(big.rows[1].solver == "psnmf");
  CHECK(big.rows[3].m == 200);
  CHECK(big.rows[6].filter == "weak");
  for (const AggregateRow& row : big.rows) {
    CHECK(row.mean_correct.size() == 3);
    CHECK(row.mean_matched >= 0.0);
    CHECK(row.mean_matched <= 1.0);
  }
}

TEST_CASE("benchmark is deterministic and thread independent") {
  ExperimentConfig cfg = small_experiment();
  cfg.trials = 4;
  cfg.threads = 1;
  const BenchmarkTable a = run_benchmark(cfg);
  cfg.threads = 3;
  const BenchmarkTable b = run_benchmark(cfg);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].seed == b.trials[i].seed);
    CHECK(a.trials[i].eval.cost_fc == b.trials[i].eval.cost_fc);
    CHECK(a.trials[i].objective == b.trials[i].objective);
  }
  CHECK(a.rows[0].mean_fc == b.rows[0].mean_fc);

  cfg.fixed_instance = true;
  const BenchmarkTable fixed = run_benchmark(cfg);
  CHECK(fixed.trials.size() == 4);
}

TEST_CASE("verify reports") {
  const VerifyReport yes = verify(fixtures::worked_example_graph(), fixtures::worked_example_partition());
  CHECK(format_verify(yes) == "EEP: yes\nquotient Laplacian:\n[[3, -3, 0],\n [-2, 4, -2],\n [0, -1, 1]]\n");

  const VerifyReport trivial =
      verify(fixtures::worked_example_graph(), Partition({{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}, 11));
  CHECK(format_verify(trivial) == "EEP: yes\nquotient Laplacian:\n[[0]]\n");

  const VerifyReport no = verify(Graph(3, {{0, 1}, {1, 2}}), Partition({{0}, {1, 2}}, 3));
  CHECK_FALSE(no.check.is_eep);
  CHECK_FALSE(no.quotient.has_value());
  CHECK(format_verify(no) == "EEP: no\nwitness: cell 2 -> cell 1: vertex 2 has 1 neighbors, vertex 3 has 0\n");
}

}  // namespace
}  // namespace blindeep

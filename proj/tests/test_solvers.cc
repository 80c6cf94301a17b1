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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/error.h"
#include "blindeep/graph.h"
#include "blindeep/rng.h"
#include "blindeep/solvers.h"
#include "blindeep/spectral.h"
#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"

namespace blindeep {
namespace {

Eigen::MatrixXd gaussian(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  return a;
}

Eigen::MatrixXd random_orthonormal(Rng& rng, int n, int r) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(rng, n, r));
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
}

std::vector<int> random_labels(Rng& rng, int n, int r) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i < r ? i : static_cast<int>(rng.below(r));
  return labels;
}

SolverConfig config(SolverKind kind) {
  SolverConfig cfg;
  cfg.kind = kind;
  cfg.seed = 17;
  return cfg;
}

const SolverKind kAllSolvers[] = {SolverKind::kKMeans, SolverKind::kPsnmf, SolverKind::kPenalty};

TEST_CASE("problem instance requires orthonormal columns") {
  CHECK_THROWS_AS(ProblemInstance::from_vectors(Eigen::MatrixXd::Ones(4, 2)), InvalidArgument);
  const ProblemInstance inst = ProblemInstance::from_vectors(Eigen::MatrixXd::Identity(4, 2));
  CHECK(inst.r == 2);
}

TEST_CASE("objective matches the clustering cost") {
  Rng rng(51, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(20));
    const int r = 1 + static_cast<int>(rng.below(std::min(n, 5)));
    const Eigen::MatrixXd v = gaussian(rng, n, 1 + static_cast<int>(rng.below(4)));
    const std::vector<int> labels = random_labels(rng, n, r);
    const Partition p = Partition::from_labels(labels, r);
    const Eigen::MatrixXd h = indicator_from_partition(p, n).normalized;
    CHECK(std::abs(objective(v, h) - oracle::cluster_cost(v, labels, r)) <= 1e-10);
  }
}

TEST_CASE("objective examples and column permutation invariance") {
  const Graph g = fixtures::worked_example_graph();
  const Partition p = fixtures::worked_example_partition();
  const Eigen::MatrixXd v = structural_eigenvectors(quotient(g, p), p).vectors;
  const Eigen::MatrixXd h = indicator_from_partition(p, 11).normalized;
  CHECK(objective(v, h) <= 1e-24);

  Rng rng(52, 0);
  const Eigen::MatrixXd q = random_orthonormal(rng, 9, 3);
  CHECK(objective(q, q) <= 1e-24);

  const Eigen::MatrixXd w = gaussian(rng, 11, 3);
  Eigen::MatrixXd permuted(11, 3);
  permuted << h.col(2), h.col(0), h.col(1);
  CHECK(objective(w, permuted) == doctest::Approx(objective(w, h)).epsilon(1e-14));
  CHECK_THROWS_AS(objective(w, h.topRows(5)), InvalidArgument);
}

TEST_CASE("brute force minimum over all 2-partitions of 4 rows") {
  Rng rng(53, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd v = gaussian(rng, 4, 2);
    double best = std::numeric_limits<double>::infinity();
    oracle::for_each_partition(4, 2, [&](const std::vector<int>& labels) {
      const Eigen::MatrixXd h = indicator_from_partition(Partition::from_labels(labels, 2), 4).normalized;
      best = std::min(best, objective(v, h));
    });
    CHECK(best == doctest::Approx(oracle::brute_force_min_cost(v, 2)).epsilon(1e-12));
  }
}

TEST_CASE("feasibility checks") {
  const Eigen::MatrixXd h = indicator_from_partition(fixtures::worked_example_partition(), 11).normalized;
  CHECK(check_feasibility(h).ok);
  Eigen::MatrixXd neg = h;
  neg(0, 0) = -neg(0, 0);
  CHECK_FALSE(check_feasibility(neg).ok);
  Eigen::MatrixXd two = h;
  two(0, 1) = 0.1;
  CHECK_FALSE(check_feasibility(two).ok);
  CHECK_FALSE(check_feasibility(indicator_from_partition(fixtures::worked_example_partition(), 11).binary).ok);
  CHECK(check_feasibility(h).failure.empty());
}

TEST_CASE("row argmax postprocess") {
  Eigen::MatrixXd a(2, 2);
  a << 0.9, 0.1, 0.2, 0.8;
  CHECK(row_argmax_postprocess(a).binary == Eigen::MatrixXd::Identity(2, 2));

  const IndicatorMatrix ind = indicator_from_partition(fixtures::worked_example_partition(), 11);
  CHECK(row_argmax_postprocess(ind.binary).binary == ind.binary);
  CHECK((row_argmax_postprocess(ind.binary).normalized - ind.normalized).norm() == 0.0);

  Eigen::MatrixXd tie(3, 2);
  tie << 0.5, 0.5, 0.1, 0.9, 0.6, 0.4;
  CHECK(row_argmax_postprocess(tie).binary.row(0) == Eigen::RowVector2d(1, 0));

  // Column 1 is empty after the argmax; the row with the best ratio moves.
  Eigen::MatrixXd lopsided(3, 2);
  lopsided << 0.9, 0.1, 0.7, 0.3, 0.8, 0.2;
  const IndicatorMatrix fixed = row_argmax_postprocess(lopsided);
  CHECK(fixed.binary.col(1) == Eigen::Vector3d(0, 1, 0));
  CHECK(check_feasibility(fixed.normalized).ok);

  // All-zero rows and columns still produce a feasible indicator.
  const IndicatorMatrix zeros = row_argmax_postprocess(Eigen::MatrixXd::Zero(5, 3));
  CHECK(check_feasibility(zeros.normalized).ok);

  CHECK_THROWS_AS(row_argmax_postprocess(-Eigen::MatrixXd::Ones(3, 2)), InvalidArgument);
  CHECK_THROWS_AS(row_argmax_postprocess(Eigen::MatrixXd::Ones(2, 3)), InvalidArgument);
}

TEST_CASE("kmeans examples") {
  ProblemInstance line;
  line.p_hat = Eigen::Vector4d(0.0, 0.1, 10.0, 10.1);
  line.r = 2;
  const SolverResult res = solve_kmeans(line, {.restarts = 5, .max_iter = 100, .seed = 1});
  CHECK(same_up_to_labels(res.partition(), Partition({{0, 1}, {2, 3}}, 4)));
  CHECK(res.solver_id == "kmeans");

  ProblemInstance singles = ProblemInstance::from_vectors(Eigen::MatrixXd::Identity(5, 4));
  singles.r = 5;
  const SolverResult all = solve_kmeans(singles);
  CHECK(all.partition().r() == 5);
  CHECK(all.objective <= 1e-24);

  ProblemInstance bad = line;
  bad.r = 5;
  CHECK_THROWS_AS(solve_kmeans(bad), InvalidArgument);
  CHECK_THROWS_AS(solve_kmeans(line, {.restarts = 0}), InvalidArgument);
}

TEST_CASE("kmeans attains the exhaustive minimum on small instances") {
  Rng rng(54, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 5;
    const Eigen::MatrixXd p = trial % 2 ? random_orthonormal(rng, n, 2) : gaussian(rng, n, 2);
    const double best = oracle::brute_force_min_cost(p, 2);
    ProblemInstance inst{p, 2};
    const SolverResult res = solve_kmeans(inst, {.restarts = 20, .max_iter = 300, .seed = 100 + static_cast<std::uint64_t>(trial)});
    CHECK(res.objective <= best + 1e-10);
    CHECK(res.objective >= best - 1e-10);
  }
}

TEST_CASE("kernel split") {
  Eigen::MatrixXd k(2, 2);
  k << 1, -2, -2, 1;
  const KernelSplit ex = split_kernel(k);
  CHECK(ex.k_plus == Eigen::Matrix2d::Identity());
  Eigen::MatrixXd minus(2, 2);
  minus << 0, 2, 2, 0;
  CHECK(ex.k_minus == minus);

  Rng rng(55, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd ph = gaussian(rng, 8, 3);
    const KernelSplit s = kernel_split(ph);
    const Eigen::MatrixXd kk = ph * ph.transpose();
    CHECK((s.k_plus - s.k_minus - kk).norm() <= 1e-12 * std::max(1.0, kk.norm()));
    CHECK((s.k_plus.array() >= 0.0).all());
    CHECK((s.k_minus.array() >= 0.0).all());
    CHECK((s.k_plus.array() * s.k_minus.array() == 0.0).all());
  }
  CHECK(kernel_split(Eigen::MatrixXd::Ones(4, 2)).k_minus.isZero(0.0));
}

TEST_CASE("psnmf fixed point on a feasible nonnegative kernel") {
  const Eigen::MatrixXd h = indicator_from_partition(fixtures::worked_example_partition(), 11).normalized;
  const KernelSplit s = kernel_split(h);
  CHECK(s.k_minus.isZero(0.0));
  const Eigen::MatrixXd num = s.k_plus * h + h * h.transpose() * s.k_minus * h;
  const Eigen::MatrixXd den = s.k_minus * h + h * h.transpose() * s.k_plus * h;
  CHECK((num - den).norm() <= 1e-12);

  const SolverResult res = solve_psnmf(ProblemInstance::from_vectors(h));
  CHECK(same_up_to_labels(res.partition(), fixtures::worked_example_partition()));
  CHECK(res.objective <= 1e-12);
}

TEST_CASE("psnmf iterates stay nonnegative") {
  Rng rng(56, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const ProblemInstance inst = ProblemInstance::from_vectors(random_orthonormal(rng, 30, 3));
    bool nonneg = true;
    int calls = 0;
    PsnmfOptions opts;
    opts.seed = trial;
    opts.max_iter = 300;
    opts.on_iterate = [&](const Eigen::MatrixXd& it) {
      ++calls;
      nonneg = nonneg && (it.array() >= 0.0).all();
    };
    const SolverResult res = solve_psnmf(inst, opts);
    CHECK(nonneg);
    CHECK(calls == res.iterations);
    CHECK(check_feasibility(res.h_hat.normalized).ok);
    CHECK_FALSE(res.trace.empty());
  }
}

TEST_CASE("exact penalty leaves a feasible indicator unchanged") {
  const Partition p = fixtures::worked_example_partition();
  const Eigen::MatrixXd h = indicator_from_partition(p, 11).normalized;
  const SolverResult res = solve_exact_penalty(ProblemInstance::from_vectors(h));
  CHECK(res.partition() == p);
  CHECK(res.objective <= 1e-24);
  CHECK(res.solver_id == "exact-penalty (simplified)");
  CHECK_THROWS_AS(solve_exact_penalty(ProblemInstance::from_vectors(h), {.rho_schedule = {}}), InvalidArgument);
}

TEST_CASE("all solvers recover planted partitions from structural eigenvectors") {
  Rng rng(57, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int r = 2 + static_cast<int>(rng.below(3));
    const PlantedInstance inst = generate_planted_eep(fixtures::random_planted_spec(rng, r, 3, 15), trial);
    const Eigen::MatrixXd v = structural_eigenvectors(inst.quotient, inst.truth).vectors;
    const ProblemInstance prob = ProblemInstance::from_vectors(v);
    for (SolverKind kind : kAllSolvers) {
      const SolverResult res = solve(prob, config(kind));
      CHECK(same_up_to_labels(res.partition(), inst.truth));
      CHECK(res.objective <= 1e-12);
      CHECK(check_feasibility(res.h_hat.normalized).ok);
    }
  }
}

TEST_CASE("solver outputs are always feasible") {
  Rng rng(58, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(30));
    const int r = 2 + static_cast<int>(rng.below(4));
    const ProblemInstance prob = ProblemInstance::from_vectors(random_orthonormal(rng, n, r));
    for (SolverKind kind : kAllSolvers) {
      const SolverResult res = solve(prob, config(kind));
      const FeasibilityReport rep = check_feasibility(res.h_hat.normalized);
      CHECK_MESSAGE(rep.ok, rep.failure);
      CHECK(res.objective >= 0.0);
      CHECK(res.labels.size() == static_cast<std::size_t>(n));
      CHECK(res.partition().r() == r);
    }
  }
}

TEST_CASE("solvers are deterministic in the seed") {
  Rng rng(59, 0);
  const ProblemInstance prob = ProblemInstance::from_vectors(random_orthonormal(rng, 25, 3));
  for (SolverKind kind : kAllSolvers) {
    const SolverResult a = solve(prob, config(kind));
    const SolverResult b = solve(prob, config(kind));
    CHECK(a.labels == b.labels);
    CHECK(a.objective == b.objective);
    CHECK(a.iterations == b.iterations);
  }
}

TEST_CASE("solver names") {
  CHECK(parse_solver_kind("kmeans") == SolverKind::kKMeans);
  CHECK(parse_solver_kind("psnmf") == SolverKind::kPsnmf);
  CHECK(parse_solver_kind("penalty") == SolverKind::kPenalty);
  CHECK(parse_solver_kind("exact-penalty") == SolverKind::kPenalty);
  CHECK_THROWS_AS(parse_solver_kind("spectral"), InvalidArgument);
  CHECK(solver_name(SolverKind::kPsnmf) == "psnmf");
}

}  // namespace
}  // namespace blindeep

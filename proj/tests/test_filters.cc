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
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/error.h"
#include "blindeep/filters.h"
#include "blindeep/graph.h"
#include "blindeep/rng.h"
#include "blindeep/spectral.h"
#include "doctest.h"
#include "fixtures.h"

namespace blindeep {
namespace {

Graph random_graph(Rng& rng, int n, double p) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

// Scaling and squaring on a truncated Taylor series.
Eigen::MatrixXd expm_oracle(const Eigen::MatrixXd& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Eigen::MatrixXd b = a / std::pow(2.0, squarings);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = result;
  for (int k = 1; k < 30; ++k) {
    term = term * b / k;
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

TEST_CASE("filter factories and responses") {
  CHECK_THROWS_AS(GraphFilter::heat(-1.0), InvalidArgument);
  CHECK_THROWS_AS(GraphFilter::iir(-0.1), InvalidArgument);
  CHECK_THROWS_AS(GraphFilter::polynomial({}), InvalidArgument);
  CHECK(GraphFilter::heat(2.0).response(1.5) == doctest::Approx(std::exp(-3.0)));
  CHECK(GraphFilter::iir(0.5).response(2.0) == doctest::Approx(0.5));
  CHECK(GraphFilter::polynomial({1.0, -2.0, 3.0}).response(2.0) == doctest::Approx(9.0));
  CHECK(GraphFilter::identity().response(7.0) == 1.0);
}

TEST_CASE("heat with zero strength is the identity") {
  const FilterMatrix fm = build_filter_matrix(GraphFilter::heat(0.0), fixtures::worked_example_graph());
  CHECK((fm.matrix - Eigen::MatrixXd::Identity(11, 11)).norm() <= 1e-12);
}

TEST_CASE("filter matrices match closed forms") {
  Rng rng(31, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, 5 + static_cast<int>(rng.below(25)), 0.3);
    const Eigen::MatrixXd l = laplacian(g);
    const int n = g.n();
    const double sigma = 0.05 + rng.uniform();
    const double alpha = 0.05 + rng.uniform();

    const Eigen::MatrixXd heat = build_filter_matrix(GraphFilter::heat(sigma), g).matrix;
    CHECK((heat - expm_oracle(-sigma * l)).norm() <= 1e-8);

    const Eigen::MatrixXd iir = build_filter_matrix(GraphFilter::iir(alpha), g).matrix;
    const Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(n, n) + alpha * l).partialPivLu().inverse();
    CHECK((iir - inv).norm() <= 1e-8);

    for (const Eigen::MatrixXd* f : {&heat, &iir}) {
      CHECK(*f == f->transpose());
      CHECK((*f * l - l * *f).norm() <= 1e-8);
    }
  }
}

TEST_CASE("polynomial filter agrees with Horner evaluation") {
  Rng rng(32, 0);
  for (int degree = 0; degree <= 6; ++degree) {
    const Graph g = random_graph(rng, 12, 0.25);
    const Eigen::MatrixXd l = laplacian(g);
    std::vector<double> coeffs(degree + 1);
    for (double& c : coeffs) c = rng.normal() / 4.0;
    Eigen::MatrixXd horner = Eigen::MatrixXd::Zero(12, 12);
    for (int t = degree; t >= 0; --t) {
      horner = horner * l + coeffs[t] * Eigen::MatrixXd::Identity(12, 12);
    }
    const Eigen::MatrixXd built = build_filter_matrix(GraphFilter::polynomial(coeffs), g).matrix;
    CHECK((built - horner).norm() <= 1e-8 * std::max(1.0, horner.norm()));
  }
}

TEST_CASE("low pass ratio closed forms") {
  Rng rng(33, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng, 6 + static_cast<int>(rng.below(20)), 0.35);
    const EigenDecomposition d = eig_sym(laplacian(g));
    const std::vector<double> eigs(d.values.data(), d.values.data() + d.values.size());
    const int r = 1 + static_cast<int>(rng.below(g.n() - 1));
    const double lr = eigs[r - 1];
    const double lr1 = eigs[r];
    const double sigma = 0.1 + 2.0 * rng.uniform();
    const double alpha = 0.1 + 2.0 * rng.uniform();

    const LowPassRatio heat = low_pass_ratio(GraphFilter::heat(sigma), eigs, r);
    REQUIRE(heat.eta.has_value());
    CHECK(std::abs(*heat.eta - std::exp(-sigma * (lr1 - lr))) <= 1e-10);

    const LowPassRatio iir = low_pass_ratio(GraphFilter::iir(alpha), eigs, r);
    REQUIRE(iir.eta.has_value());
    CHECK(std::abs(*iir.eta - (1.0 + alpha * lr) / (1.0 + alpha * lr1)) <= 1e-10);
    CHECK(heat.is_low_pass == (std::exp(-sigma * (lr1 - lr)) < 1.0));
  }
}

TEST_CASE("low pass ratio degenerate cases") {
  const std::vector<double> eigs = {0.0, 1.0, 2.0, 4.0};
  const LowPassRatio id = low_pass_ratio(GraphFilter::identity(), eigs, 2);
  REQUIRE(id.eta.has_value());
  CHECK(*id.eta == 1.0);
  CHECK_FALSE(id.is_low_pass);

  // h(mu) = 1 - mu vanishes on the low band.
  const LowPassRatio ideal = low_pass_ratio(GraphFilter::polynomial({1.0, -1.0}), eigs, 2);
  CHECK_FALSE(ideal.eta.has_value());
  CHECK_FALSE(ideal.is_low_pass);

  CHECK_THROWS_AS(low_pass_ratio(GraphFilter::identity(), eigs, 0), InvalidArgument);
  CHECK_THROWS_AS(low_pass_ratio(GraphFilter::identity(), eigs, 4), InvalidArgument);
}

TEST_CASE("benchmark filter strengths on the 378-node model") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PlantedInstance inst = generate_planted_eep(fixtures::small_chain_spec(126, 1, 0.35), seed);
    const double dmax = inst.graph.max_degree();
    const EigenDecomposition d = eig_sym(laplacian(inst.graph));
    const std::vector<double> eigs(d.values.data(), d.values.data() + d.values.size());
    const LowPassRatio strong = low_pass_ratio(GraphFilter::heat(10.0 / dmax), eigs, 3);
    const LowPassRatio weak = low_pass_ratio(GraphFilter::iir(0.5 / dmax), eigs, 3);
    REQUIRE(strong.eta.has_value());
    REQUIRE(weak.eta.has_value());
    CHECK(*strong.eta < 0.05);
    CHECK(*weak.eta > 0.8);
    CHECK(*weak.eta < 1.0);
  }
}

TEST_CASE("exact covariance spectrum") {
  const FilterMatrix id = build_filter_matrix(GraphFilter::identity(), fixtures::worked_example_graph());
  CHECK((exact_covariance(id, 0.0) - Eigen::MatrixXd::Identity(11, 11)).norm() <= 1e-12);

  Rng rng(34, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, 20, 0.2);
    const EigenDecomposition d = eig_sym(laplacian(g));
    const GraphFilter f = trial % 2 ? GraphFilter::heat(0.3) : GraphFilter::iir(0.4);
    const double noise = 0.05 * trial;
    const Eigen::MatrixXd sigma = exact_covariance(build_filter_matrix(f, g), noise);
    CHECK(sigma == sigma.transpose());
    std::vector<double> expected;
    for (int i = 0; i < 20; ++i) expected.push_back(f.response(d.values(i)) * f.response(d.values(i)) + noise);
    std::sort(expected.begin(), expected.end());
    const EigenDecomposition s = eig_sym(sigma);
    for (int i = 0; i < 20; ++i) CHECK(std::abs(s.values(i) - expected[i]) <= 1e-8);
  }
}

TEST_CASE("filters commute with the indicator on planted EEPs") {
  Rng rng(35, 0);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 2 + static_cast<int>(rng.below(3));
    const PlantedInstance inst = generate_planted_eep(fixtures::random_planted_spec(rng, r, 3, 12), trial);
    const Eigen::MatrixXd h = indicator_from_partition(inst.truth, inst.graph.n()).binary;
    const Eigen::MatrixXd l = laplacian(inst.graph);
    const Eigen::MatrixXd lq = inst.quotient.laplacian.cast<double>();
    CHECK((l * h - h * lq).norm() == 0.0);

    const double noise = 0.1;
    for (const GraphFilter& f : {GraphFilter::heat(0.2), GraphFilter::iir(0.3)}) {
      const std::optional<Eigen::MatrixXd> fq = filter_quotient(f, inst.quotient);
      if (!fq) continue;
      ++checked;
      const FilterMatrix fm = build_filter_matrix(f, inst.graph);
      CHECK((fm.matrix * h - h * *fq).norm() <= 1e-8);

      // Sigma (H v) = (h(mu)^2 + noise) (H v) for eigenpairs (mu, v) of the quotient.
      const Eigen::MatrixXd sigma = exact_covariance(fm, noise);
      Eigen::EigenSolver<Eigen::MatrixXd> es(lq);
      for (int k = 0; k < r; ++k) {
        const double mu = es.eigenvalues()(k).real();
        const Eigen::VectorXd hv = h * es.eigenvectors().col(k).real();
        const double lam = f.response(mu);
        CHECK((sigma * hv - (lam * lam + noise) * hv).norm() <= 1e-8 * hv.norm());
      }
    }
  }
  CHECK(checked > 40);
}

}  // namespace
}  // namespace blindeep

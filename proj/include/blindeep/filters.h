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

#ifndef BLINDEEP_FILTERS_H_
#define BLINDEEP_FILTERS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/graph.h"
#include "blindeep/spectral.h"

namespace blindeep {

// A graph filter given by its scalar generating function h(mu), applied to
// the Laplacian as V Diag(h(lambda_i)) V^T.
//   heat:       h(mu) = exp(-sigma_f mu)
//   iir:        h(mu) = 1 / (1 + alpha mu)
//   polynomial: h(mu) = sum_t a_t mu^t
struct GraphFilter {
  enum class Kind { kHeat, kIir, kPolynomial };

  Kind kind = Kind::kPolynomial;
  double sigma_f = 0.0;
  double alpha = 0.0;
  std::vector<double> coeffs{1.0};

  static GraphFilter heat(double sigma_f);
  static GraphFilter iir(double alpha);
  static GraphFilter polynomial(std::vector<double> coeffs);
  static GraphFilter identity() { return polynomial({1.0}); }

  double response(double mu) const;
  std::string describe() const;
};

struct FilterMatrix {
  Eigen::MatrixXd matrix;
};

FilterMatrix build_filter_matrix(const GraphFilter& f, const Graph& g);
// Reuses a decomposition of L^G.
FilterMatrix build_filter_matrix(const GraphFilter& f, const EigenDecomposition& laplacian_eig);

struct LowPassRatio {
  std::optional<double> eta;  // empty when the low band has a zero response
  bool is_low_pass = false;
};

// eta_r = max_{i>r} |h(lambda_i)| / min_{i<=r} |h(lambda_i)| over ascending
// Laplacian eigenvalues. Requires 1 <= r <= n-1.
LowPassRatio low_pass_ratio(const GraphFilter& f, std::span<const double> laplacian_eigs, int r);

// Sigma = H H^T + noise_var I.
Eigen::MatrixXd exact_covariance(const FilterMatrix& fm, double noise_var);

// h applied to the (generally asymmetric) quotient Laplacian through its own
// eigendecomposition, R Diag(h(mu_k)) R^{-1}. Returns nullopt when the
// quotient is not numerically diagonalizable over the reals.
std::optional<Eigen::MatrixXd> filter_quotient(const GraphFilter& f, const QuotientGraph& q);

}  // namespace blindeep

#endif  // BLINDEEP_FILTERS_H_

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

#include "blindeep/filters.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "blindeep/error.h"

namespace blindeep {

GraphFilter GraphFilter::heat(double sigma_f) {
  if (!(sigma_f >= 0.0)) throw InvalidArgument("heat filter: sigma must be >= 0");
  GraphFilter f;
  f.kind = Kind::kHeat;
  f.sigma_f = sigma_f;
  f.coeffs.clear();
  return f;
}

GraphFilter GraphFilter::iir(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("iir filter: alpha must be >= 0");
  GraphFilter f;
  f.kind = Kind::kIir;
  f.alpha = alpha;
  f.coeffs.clear();
  return f;
}

GraphFilter GraphFilter::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw InvalidArgument("polynomial filter: no coefficients");
  GraphFilter f;
  f.kind = Kind::kPolynomial;
  f.coeffs = std::move(coeffs);
  return f;
}

double GraphFilter::response(double mu) const {
  switch (kind) {
    case Kind::kHeat:
      return std::exp(-sigma_f * mu);
    case Kind::kIir:
      return 1.0 / (1.0 + alpha * mu);
    case Kind::kPolynomial: {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * mu + *it;
      return acc;
    }
  }
  return 0.0;
}

std::string GraphFilter::describe() const {
  std::ostringstream os;
  os.precision(6);
  switch (kind) {
    case Kind::kHeat:
      os << "heat(sigma=" << sigma_f << ")";
      break;
    case Kind::kIir:
      os << "iir(alpha=" << alpha << ")";
      break;
    case Kind::kPolynomial:
      os << "poly(degree=" << coeffs.size() - 1 << ")";
      break;
  }
  return os.str();
}

FilterMatrix build_filter_matrix(const GraphFilter& f, const EigenDecomposition& laplacian_eig) {
  const Eigen::Index n = laplacian_eig.values.size();
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i) h(i) = f.response(laplacian_eig.values(i));
  const Eigen::MatrixXd& v = laplacian_eig.vectors;
  Eigen::MatrixXd m = v * h.asDiagonal() * v.transpose();
  FilterMatrix out;
  out.matrix = 0.5 * (m + m.transpose());
  return out;
}

FilterMatrix build_filter_matrix(const GraphFilter& f, const Graph& g) {
  return build_filter_matrix(f, eig_sym(laplacian(g)));
}

LowPassRatio low_pass_ratio(const GraphFilter& f, std::span<const double> eigs, int r) {
  const int n = static_cast<int>(eigs.size());
  if (r < 1 || r > n - 1) throw InvalidArgument("low_pass_ratio: need 1 <= r <= n-1");
  double low = std::numeric_limits<double>::infinity();
  double high = 0.0;
  for (int i = 0; i < r; ++i) low = std::min(low, std::abs(f.response(eigs[i])));
  for (int i = r; i < n; ++i) high = std::max(high, std::abs(f.response(eigs[i])));
  LowPassRatio out;
  if (low == 0.0) return out;
  out.eta = high / low;
  out.is_low_pass = *out.eta < 1.0;
  return out;
}

Eigen::MatrixXd exact_covariance(const FilterMatrix& fm, double noise_var) {
  if (noise_var < 0.0) throw InvalidArgument("exact_covariance: negative noise variance");
  Eigen::MatrixXd sigma = fm.matrix * fm.matrix.transpose();
  sigma = 0.5 * (sigma + sigma.transpose());
  sigma.diagonal().array() += noise_var;
  return sigma;
}

std::optional<Eigen::MatrixXd> filter_quotient(const GraphFilter& f, const QuotientGraph& q) {
  const Eigen::MatrixXd lq = q.laplacian.cast<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(lq);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXcd mu = solver.eigenvalues();
  const double scale = std::max(1.0, lq.cwiseAbs().maxCoeff());
  if (mu.imag().cwiseAbs().maxCoeff() > 1e-9 * scale) return std::nullopt;
  const Eigen::MatrixXd r = solver.eigenvectors().real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-8 * sv(0)) return std::nullopt;
  Eigen::VectorXd h(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) h(k) = f.response(mu(k).real());
  return Eigen::MatrixXd(r * h.asDiagonal() * r.inverse());
}

}  // namespace blindeep

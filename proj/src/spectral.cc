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

#include "blindeep/spectral.h"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "blindeep/error.h"

namespace blindeep {

namespace {

void fix_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      // Strict comparison keeps the first index among equal magnitudes; the
      // small slack absorbs rounding between entries that are equal in exact
      // arithmetic (e.g. constant vectors).
      if (std::abs(v(i, j)) > best * (1.0 + 1e-12)) {
        best = std::abs(v(i, j));
        arg = i;
      }
    }
    if (v(arg, j) < 0.0) v.col(j) = -v.col(j);
  }
}

}  // namespace

EigenDecomposition eig_sym(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("eig_sym: matrix must be square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("eig_sym: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericFailure("eig_sym: solver did not converge");
  EigenDecomposition dec{solver.eigenvalues(), solver.eigenvectors()};
  fix_signs(dec.vectors);
  return dec;
}

TopREigenspace top_r(const EigenDecomposition& dec, int r) {
  const int n = static_cast<int>(dec.values.size());
  if (r < 1 || r >= n) {
    throw InvalidArgument("top_r: need 1 <= r < n (r=" + std::to_string(r) +
                          ", n=" + std::to_string(n) + ")");
  }
  TopREigenspace out;
  out.vectors.resize(n, r);
  out.values.resize(r);
  for (int k = 0; k < r; ++k) {
    out.vectors.col(k) = dec.vectors.col(n - 1 - k);
    out.values(k) = dec.values(n - 1 - k);
  }
  out.next_value = dec.values(n - 1 - r);
  const double scale = std::max(1.0, std::abs(dec.values(n - 1)));
  out.boundary_tie = std::abs(out.values(r - 1) - out.next_value) <= 1e-12 * scale;
  return out;
}

double structural_residual(const Eigen::MatrixXd& vecs, const Partition& p) {
  if (vecs.rows() != p.n()) throw InvalidArgument("structural_residual: row count mismatch");
  double total = 0.0;
  for (const auto& cell : p.cells()) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(vecs.cols());
    for (int v : cell) mean += vecs.row(v);
    mean /= static_cast<double>(cell.size());
    for (int v : cell) total += (vecs.row(v) - mean).squaredNorm();
  }
  return total;
}

EigenDecomposition structural_eigenvectors(const QuotientGraph& q, const Partition& p) {
  const int r = static_cast<int>(q.laplacian.rows());
  if (p.r() != r) throw InvalidArgument("structural_eigenvectors: cell count mismatch");
  Eigen::VectorXd s(r);
  for (int k = 0; k < r; ++k) s(k) = std::sqrt(static_cast<double>(q.cell_sizes[k]));
  Eigen::MatrixXd m = s.asDiagonal() * q.laplacian.cast<double>() * s.cwiseInverse().asDiagonal();
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const Eigen::MatrixXd hhat = indicator_from_partition(p, p.n()).normalized;
  EigenDecomposition dec{solver.eigenvalues(), hhat * solver.eigenvectors()};
  fix_signs(dec.vectors);
  return dec;
}

double spectral_norm_sym(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace blindeep

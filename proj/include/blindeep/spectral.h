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

#ifndef BLINDEEP_SPECTRAL_H_
#define BLINDEEP_SPECTRAL_H_

#include <Eigen/Dense>

#include "blindeep/graph.h"

namespace blindeep {

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

// Full decomposition of a symmetric matrix. Each eigenvector is signed so its
// largest-magnitude component (first one on ties) is positive. Throws
// InvalidArgument if `a` is not symmetric to 1e-12 (relative to its largest
// entry).
EigenDecomposition eig_sym(const Eigen::MatrixXd& a);

struct TopREigenspace {
  Eigen::MatrixXd vectors;  // n x r, columns ordered by descending eigenvalue
  Eigen::VectorXd values;   // xi_1 >= ... >= xi_r
  double next_value = 0.0;  // xi_{r+1}
  bool boundary_tie = false;  // xi_r == xi_{r+1} within 1e-12 (relative)
};

// Eigenvectors of the r largest eigenvalues. Requires 1 <= r < n.
TopREigenspace top_r(const EigenDecomposition& dec, int r);

// Sum over cells of squared distances from each row to its cell mean. Zero
// exactly when every column is constant on every cell.
double structural_residual(const Eigen::MatrixXd& vecs, const Partition& p);

// The r structural eigenvectors of L^G for an EEP: lifts of the quotient
// Laplacian eigenvectors. L^{G/pi} is similar to the symmetric matrix
// S L^{G/pi} S^{-1} with S = Diag(sqrt|C_k|), so with that matrix = W M W^T the
// lifted vectors are Hhat * W, already orthonormal. Values ascending.
EigenDecomposition structural_eigenvectors(const QuotientGraph& q, const Partition& p);

// Largest absolute eigenvalue of a symmetric matrix.
double spectral_norm_sym(const Eigen::MatrixXd& a);

}  // namespace blindeep

#endif  // BLINDEEP_SPECTRAL_H_

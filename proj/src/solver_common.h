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

#ifndef BLINDEEP_SRC_SOLVER_COMMON_H_
#define BLINDEEP_SRC_SOLVER_COMMON_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/solvers.h"

namespace blindeep::internal {

// Row argmax with empty-column repair. Negative entries are allowed here and
// treated as zero when ranking repair candidates.
std::vector<int> argmax_labels(const Eigen::MatrixXd& h);

// Fills h_hat, labels and objective from a label vector (all labels used).
void finish_result(const Eigen::MatrixXd& p_hat, std::vector<int> labels, int r,
                   SolverResult& out);

double orthogonality_error(const Eigen::MatrixXd& h);

}  // namespace blindeep::internal

#endif  // BLINDEEP_SRC_SOLVER_COMMON_H_

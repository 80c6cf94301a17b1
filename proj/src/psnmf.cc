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
#include <string>

#include "blindeep/error.h"
#include "blindeep/rng.h"
#include "blindeep/solvers.h"
#include "solver_common.h"

namespace blindeep {

namespace {

constexpr double kDenominatorFloor = 1e-15;
constexpr int kTraceEvery = 10;

}  // namespace

KernelSplit kernel_split(const Eigen::MatrixXd& p_hat) {
  return split_kernel(p_hat * p_hat.transpose());
}

KernelSplit split_kernel(const Eigen::MatrixXd& k) {
  KernelSplit out;
  out.k_plus = k.cwiseMax(0.0);
  out.k_minus = (-k).cwiseMax(0.0);
  return out;
}

SolverResult solve_psnmf(const ProblemInstance& inst, const PsnmfOptions& opts) {
  if (opts.max_iter < 1) throw InvalidArgument("psnmf: max_iter must be positive");
  const Eigen::Index n = inst.p_hat.rows();
  const int r = inst.r;
  const KernelSplit ks = kernel_split(inst.p_hat);

  Rng rng(opts.seed);
  Eigen::MatrixXd h(n, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) h(i, j) = rng.uniform();
  }
  h.colwise().normalize();

  SolverResult out;
  out.solver_id = solver_name(SolverKind::kPsnmf);
  Eigen::MatrixXd next(n, r);
  int it = 0;
  for (it = 1; it <= opts.max_iter; ++it) {
    const Eigen::MatrixXd kp_h = ks.k_plus * h;
    const Eigen::MatrixXd km_h = ks.k_minus * h;
    const Eigen::MatrixXd num = kp_h + h * (h.transpose() * km_h);
    const Eigen::MatrixXd den =
        (km_h + h * (h.transpose() * kp_h)).cwiseMax(kDenominatorFloor);
    next = h.cwiseProduct(num).cwiseQuotient(den);
    if (opts.on_iterate) opts.on_iterate(next);

    const double change = (next - h).norm() / h.norm();
    h.swap(next);
    if (it % kTraceEvery == 0) {
      out.trace.push_back({it, objective(inst.p_hat, h), internal::orthogonality_error(h)});
    }
    // Zero entries can never become positive again; a dead row would leave a
    // vertex without a cell, so stop here and let the postprocess assign it.
    if (((h.array() == 0.0).rowwise().all()).any()) {
      out.notes.push_back("row of H became all zeros at iteration " + std::to_string(it) +
                          "; stopped early");
      break;
    }
    if (change <= opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.iterations = std::min(it, opts.max_iter);
  out.trace.push_back({out.iterations, objective(inst.p_hat, h), internal::orthogonality_error(h)});
  out.notes.push_back("final orthogonality error " + std::to_string(out.trace.back().orthogonality));
  internal::finish_result(inst.p_hat, internal::argmax_labels(h), r, out);
  return out;
}

}  // namespace blindeep

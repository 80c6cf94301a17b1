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
#include <string>

#include "blindeep/error.h"
#include "blindeep/rng.h"
#include "blindeep/solvers.h"
#include "solver_common.h"

namespace blindeep {

namespace {

constexpr int kPatience = 5;
constexpr double kMinStep = 1e-12;

// Thin Q factor of x with a nonnegative diagonal in R. Columns that are
// numerically dependent are replaced by seeded random directions.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& x, Rng& rng) {
  const Eigen::Index n = x.rows();
  const Eigen::Index r = x.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
  const Eigen::MatrixXd& packed = qr.matrixQR();
  const double scale = std::max(1.0, x.norm());
  for (Eigen::Index k = 0; k < r; ++k) {
    if (std::abs(packed(k, k)) <= 1e-10 * scale) {
      Eigen::VectorXd v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < r; ++j) {
          if (j != k) v -= q.col(j).dot(v) * q.col(j);
        }
      }
      q.col(k) = v.normalized();
    } else if (packed(k, k) < 0.0) {
      q.col(k) = -q.col(k);
    }
  }
  return q;
}

struct PenalizedProblem {
  const Eigen::MatrixXd& pbar;
  double rho;

  // Evaluated as a residual; the shortcut ||Pbar||^2 - ||H^T Pbar||^2 loses
  // everything below ~1e-15 relative and hides progress near the optimum.
  double fit(const Eigen::MatrixXd& h) const {
    return (pbar - h * (h.transpose() * pbar)).squaredNorm();
  }
  double value(const Eigen::MatrixXd& h) const {
    return fit(h) + rho * h.cwiseMin(0.0).squaredNorm();
  }
  Eigen::MatrixXd gradient(const Eigen::MatrixXd& h) const {
    return -2.0 * pbar * (pbar.transpose() * h) + 2.0 * rho * h.cwiseMin(0.0);
  }
};

}  // namespace

SolverResult solve_exact_penalty(const ProblemInstance& inst, const PenaltyOptions& opts) {
  if (opts.rho_schedule.empty()) throw InvalidArgument("penalty: empty rho schedule");
  if (opts.max_inner < 1 || opts.max_outer < 1) {
    throw InvalidArgument("penalty: max_inner and max_outer must be positive");
  }
  const int r = inst.r;
  const double shift = inst.p_hat.minCoeff();
  const Eigen::MatrixXd pbar = inst.p_hat.array() - shift;

  Rng rng(opts.seed);
  Eigen::MatrixXd h = orthonormalize(pbar, rng);
  const double lipschitz = 2.0 * pbar.squaredNorm();

  SolverResult out;
  out.solver_id = solver_name(SolverKind::kPenalty);
  out.notes.push_back("input shifted by a = " + std::to_string(shift));
  const int stages = std::min<int>(opts.max_outer, static_cast<int>(opts.rho_schedule.size()));
  bool stalled = false;
  bool stage_converged = false;
  for (int stage = 0; stage < stages; ++stage) {
    const PenalizedProblem prob{pbar, opts.rho_schedule[stage]};
    double step = 1.0 / (lipschitz + 2.0 * prob.rho);
    Eigen::MatrixXd best = h;
    double best_value = prob.value(h);
    int idle = 0;
    stage_converged = false;
    for (int inner = 0; inner < opts.max_inner; ++inner) {
      ++out.iterations;
      const Eigen::MatrixXd g = prob.gradient(h);
      const Eigen::MatrixXd hg = h.transpose() * g;
      const Eigen::MatrixXd riem = g - h * (0.5 * (hg + hg.transpose()));
      if (riem.norm() <= opts.tol) {
        stage_converged = true;
        break;
      }
      h = orthonormalize(h - step * riem, rng);
      const double value = prob.value(h);
      if (value < best_value) {
        best_value = value;
        best = h;
        idle = 0;
      } else if (++idle >= kPatience) {
        step *= 0.5;
        h = best;
        idle = 0;
        if (step < kMinStep) {
          stalled = true;
          break;
        }
      }
    }
    h = best;
    out.trace.push_back({out.iterations, prob.value(h), internal::orthogonality_error(h)});
    if (stalled) {
      out.notes.push_back("stalled at rho = " + std::to_string(prob.rho) + " (step below 1e-12)");
      break;
    }
  }
  out.converged = stage_converged && !stalled;
  out.notes.push_back("final penalty " + std::to_string(h.cwiseMin(0.0).squaredNorm()));
  internal::finish_result(inst.p_hat, internal::argmax_labels(h), r, out);
  return out;
}

}  // namespace blindeep

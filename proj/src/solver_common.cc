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
#include "blindeep/solvers.h"
#include "solver_common.h"

namespace blindeep {

namespace internal {

std::vector<int> argmax_labels(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  const int r = static_cast<int>(h.cols());
  if (n < r) throw InvalidArgument("postprocess: need at least as many rows as columns");
  std::vector<int> labels(n, 0);
  std::vector<int> counts(r, 0);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int k = 1; k < r; ++k) {
      if (h(i, k) > h(i, best)) best = k;
    }
    labels[i] = best;
    ++counts[best];
  }
  for (int k = 0; k < r; ++k) {
    if (counts[k] > 0) continue;
    int pick = -1;
    double best_ratio = -1.0;
    for (int i = 0; i < n; ++i) {
      if (counts[labels[i]] < 2) continue;
      const double top = std::max(h(i, labels[i]), 0.0);
      const double cand = std::max(h(i, k), 0.0);
      // A row with no positive entry has no preference; rank it as movable.
      const double ratio = top > 0.0 ? cand / top : 1.0;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        pick = i;
      }
    }
    --counts[labels[pick]];
    labels[pick] = k;
    counts[k] = 1;
  }
  return labels;
}

void finish_result(const Eigen::MatrixXd& p_hat, std::vector<int> labels, int r,
                   SolverResult& out) {
  const Partition part = Partition::from_labels(labels, r);
  out.h_hat = indicator_from_partition(part, part.n());
  out.labels = std::move(labels);
  out.objective = objective(p_hat, out.h_hat.normalized);
}

double orthogonality_error(const Eigen::MatrixXd& h) {
  return (h.transpose() * h - Eigen::MatrixXd::Identity(h.cols(), h.cols())).norm();
}

}  // namespace internal

ProblemInstance ProblemInstance::from_vectors(Eigen::MatrixXd p_hat) {
  const Eigen::Index r = p_hat.cols();
  if (r < 1 || p_hat.rows() < r) throw InvalidArgument("problem: need n >= r >= 1");
  const double err =
      (p_hat.transpose() * p_hat - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
  if (err > 1e-8) throw InvalidArgument("problem: columns of Phat are not orthonormal");
  ProblemInstance inst;
  inst.p_hat = std::move(p_hat);
  inst.r = static_cast<int>(r);
  return inst;
}

Partition SolverResult::partition() const {
  return Partition::from_labels(labels, static_cast<int>(h_hat.normalized.cols()));
}

double objective(const Eigen::MatrixXd& p_hat, const Eigen::MatrixXd& h_hat) {
  if (p_hat.rows() != h_hat.rows()) throw InvalidArgument("objective: row count mismatch");
  return (p_hat - h_hat * (h_hat.transpose() * p_hat)).squaredNorm();
}

FeasibilityReport check_feasibility(const Eigen::MatrixXd& h, double tol) {
  FeasibilityReport rep;
  const Eigen::Index n = h.rows();
  const Eigen::Index r = h.cols();
  auto fail = [&rep](std::string why) {
    rep.ok = false;
    rep.failure = std::move(why);
    return rep;
  };
  if ((h.array() < 0.0).any()) return fail("negative entry");
  for (Eigen::Index i = 0; i < n; ++i) {
    if ((h.row(i).array() != 0.0).count() != 1) {
      return fail("row " + std::to_string(i + 1) + " does not have exactly one nonzero");
    }
  }
  if ((h.transpose() * h - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() > tol) {
    return fail("columns are not orthonormal");
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  if ((h * (h.transpose() * ones) - ones).cwiseAbs().maxCoeff() > tol) {
    return fail("H H^T 1 != 1");
  }
  return rep;
}

IndicatorMatrix row_argmax_postprocess(const Eigen::MatrixXd& h) {
  if ((h.array() < 0.0).any()) throw InvalidArgument("postprocess: input has negative entries");
  const Partition part =
      Partition::from_labels(internal::argmax_labels(h), static_cast<int>(h.cols()));
  return indicator_from_partition(part, part.n());
}

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kKMeans:
      return "kmeans";
    case SolverKind::kPsnmf:
      return "psnmf";
    case SolverKind::kPenalty:
      return "exact-penalty (simplified)";
  }
  return "unknown";
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "kmeans") return SolverKind::kKMeans;
  if (name == "psnmf") return SolverKind::kPsnmf;
  if (name == "penalty" || name == "exact-penalty") return SolverKind::kPenalty;
  throw InvalidArgument("unknown solver '" + name + "' (expected kmeans, psnmf or penalty)");
}

SolverResult solve(const ProblemInstance& inst, const SolverConfig& cfg) {
  switch (cfg.kind) {
    case SolverKind::kKMeans: {
      KMeansOptions o;
      o.restarts = cfg.restarts.value_or(o.restarts);
      o.max_iter = cfg.max_iter.value_or(o.max_iter);
      o.seed = cfg.seed;
      return solve_kmeans(inst, o);
    }
    case SolverKind::kPsnmf: {
      PsnmfOptions o;
      o.max_iter = cfg.max_iter.value_or(o.max_iter);
      o.tol = cfg.tol.value_or(o.tol);
      o.seed = cfg.seed;
      o.on_iterate = cfg.on_iterate;
      return solve_psnmf(inst, o);
    }
    case SolverKind::kPenalty: {
      PenaltyOptions o;
      if (cfg.rho_schedule) {
        o.rho_schedule = *cfg.rho_schedule;
        o.max_outer = static_cast<int>(o.rho_schedule.size());
      }
      o.max_inner = cfg.max_iter.value_or(o.max_inner);
      o.tol = cfg.tol.value_or(o.tol);
      o.seed = cfg.seed;
      return solve_exact_penalty(inst, o);
    }
  }
  throw InvalidArgument("solve: unknown solver kind");
}

}  // namespace blindeep

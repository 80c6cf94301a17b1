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

#ifndef BLINDEEP_SOLVERS_H_
#define BLINDEEP_SOLVERS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blindeep/graph.h"

namespace blindeep {

// Input to every solver: estimated structural eigenvectors Phat (n x r) with
// orthonormal columns.
struct ProblemInstance {
  Eigen::MatrixXd p_hat;
  int r = 0;

  // Checks orthonormality of the columns to 1e-8.
  static ProblemInstance from_vectors(Eigen::MatrixXd p_hat);
};

struct TracePoint {
  int iteration;
  double objective;
  double orthogonality;  // ||H^T H - I||_F of the iterate
};

struct SolverResult {
  std::string solver_id;
  IndicatorMatrix h_hat;  // feasible normalized indicator, plus its binary form
  std::vector<int> labels;
  double objective = 0.0;  // ||Phat - Hhat Hhat^T Phat||_F^2
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> notes;
  std::vector<TracePoint> trace;

  Partition partition() const;
};

// ||Phat - Hhat Hhat^T Phat||_F^2.
double objective(const Eigen::MatrixXd& p_hat, const Eigen::MatrixXd& h_hat);

struct FeasibilityReport {
  bool ok = true;
  std::string failure;
};

// The four constraints of the nonnegative-orthogonal model: H^T H = I,
// H H^T 1 = 1, exactly one nonzero per row, H >= 0.
FeasibilityReport check_feasibility(const Eigen::MatrixXd& h_hat, double tol = 1e-12);

// Per row keep the argmax column (lowest index on ties). A column left empty
// receives the row, taken from a column with at least two members, whose
// entry in the empty column is largest relative to its own maximum (lowest row
// index on ties). Requires h >= 0 and n >= r.
IndicatorMatrix row_argmax_postprocess(const Eigen::MatrixXd& h);

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  std::uint64_t seed = 0;
};

// Lloyd iterations with k-means++ seeding on the rows of Phat, each run
// refined by single-point Hartigan moves; best of `restarts` runs by
// within-cluster sum of squares.
SolverResult solve_kmeans(const ProblemInstance& inst, const KMeansOptions& opts = {});

struct KernelSplit {
  Eigen::MatrixXd k_plus;
  Eigen::MatrixXd k_minus;
};

// K = Phat Phat^T (linear kernel) split into positive and negative parts.
KernelSplit kernel_split(const Eigen::MatrixXd& p_hat);
// Entrywise split of an arbitrary kernel matrix.
KernelSplit split_kernel(const Eigen::MatrixXd& k);

struct PsnmfOptions {
  int max_iter = 5000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  // Called with every iterate, after the multiplicative update.
  std::function<void(const Eigen::MatrixXd&)> on_iterate;
};

// Projective semi-NMF by the multiplicative Lagrangian update
//   H <- H .* (K+ H + H H^T K- H) ./ (K- H + H H^T K+ H)
// from a seeded Uniform(0,1) start with unit columns. Stops on relative change
// <= tol, on max_iter, or as soon as a row of H becomes all zeros; then
// row_argmax_postprocess.
SolverResult solve_psnmf(const ProblemInstance& inst, const PsnmfOptions& opts = {});

struct PenaltyOptions {
  std::vector<double> rho_schedule{1.0, 10.0, 100.0, 1000.0};
  int max_outer = 4;
  int max_inner = 1000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

// Simplified exact-penalty solver for orthogonal nonnegative factorization.
// Shifts the input to Pbar = Phat - a 1 1^T with a = min(Phat) and minimizes
//   ||Pbar - H H^T Pbar||_F^2 + rho * ||min(H, 0)||_F^2   s.t. H^T H = I
// by Riemannian gradient steps with a QR retraction, raising rho along the
// schedule, then applies the row-argmax postprocess.
SolverResult solve_exact_penalty(const ProblemInstance& inst, const PenaltyOptions& opts = {});

enum class SolverKind { kKMeans, kPsnmf, kPenalty };

// "kmeans", "psnmf", "exact-penalty (simplified)".
std::string solver_name(SolverKind kind);
// Accepts "kmeans", "psnmf", "penalty".
SolverKind parse_solver_kind(const std::string& name);

// Uniform configuration for the three solvers. Unset fields take the
// per-solver defaults above; `max_iter` means Lloyd iterations, multiplicative
// updates, or inner gradient steps respectively.
struct SolverConfig {
  SolverKind kind = SolverKind::kKMeans;
  std::optional<int> restarts;
  std::optional<int> max_iter;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> rho_schedule;
  std::function<void(const Eigen::MatrixXd&)> on_iterate;  // PSNMF only
};

SolverResult solve(const ProblemInstance& inst, const SolverConfig& cfg);

}  // namespace blindeep

#endif  // BLINDEEP_SOLVERS_H_

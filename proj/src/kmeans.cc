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

#include <limits>
#include <vector>

#include "blindeep/error.h"
#include "blindeep/rng.h"
#include "blindeep/solvers.h"
#include "solver_common.h"

namespace blindeep {

namespace {

struct LloydRun {
  std::vector<int> labels;
  double sse = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// k-means++: first center uniform, then proportional to squared distance to
// the nearest chosen center.
Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  std::vector<bool> chosen(n, false);
  Eigen::Index first = static_cast<Eigen::Index>(rng.below(n));
  centers.row(0) = x.row(first);
  chosen[first] = true;
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d2(i) <= 0.0) continue;
        pick = i;
        u -= d2(i);
        if (u < 0.0) break;
      }
    } else {
      // All points coincide with chosen centers: take the first unused row.
      for (Eigen::Index i = 0; i < n && pick < 0; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    centers.row(c) = x.row(pick);
    chosen[pick] = true;
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

LloydRun lloyd(const Eigen::MatrixXd& x, int k, int max_iter, Rng& rng) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd centers = seed_centers(x, k, rng);
  LloydRun run;
  run.labels.assign(n, -1);
  std::vector<int> counts(k);
  Eigen::VectorXd dist(n);
  for (int it = 1; it <= max_iter; ++it) {
    bool changed = false;
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (x.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      dist(i) = best_d;
      if (run.labels[i] != best) changed = true;
      run.labels[i] = best;
      ++counts[best];
    }
    // Empty-cluster repair: move the point farthest from its center.
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      for (int i = 0; i < n; ++i) {
        if (counts[run.labels[i]] > 1 && (far < 0 || dist(i) > dist(far))) far = i;
      }
      --counts[run.labels[far]];
      run.labels[far] = c;
      counts[c] = 1;
      dist(far) = 0.0;
      centers.row(c) = x.row(far);
      changed = true;
    }
    centers.setZero();
    for (int i = 0; i < n; ++i) centers.row(run.labels[i]) += x.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(counts[c]);
    run.iterations = it;
    if (!changed) {
      run.converged = true;
      break;
    }
  }
  run.sse = 0.0;
  for (int i = 0; i < n; ++i) run.sse += (x.row(i) - centers.row(run.labels[i])).squaredNorm();
  return run;
}

// Hartigan refinement: move single points while the exact change in SSE,
// n_b/(n_b+1) |x-c_b|^2 - n_a/(n_a-1) |x-c_a|^2, is negative.
void hartigan(const Eigen::MatrixXd& x, int k, LloydRun& run) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) {
    sums.row(run.labels[i]) += x.row(i);
    ++counts[run.labels[i]];
  }
  bool moved = true;
  for (int pass = 0; moved && pass < 100 * n; ++pass) {
    moved = false;
    for (int i = 0; i < n; ++i) {
      const int a = run.labels[i];
      if (counts[a] < 2) continue;
      const double na = counts[a];
      const double loss = na / (na - 1.0) * (x.row(i) - sums.row(a) / na).squaredNorm();
      int target = -1;
      double best_gain = 1e-14 * (1.0 + loss);
      for (int b = 0; b < k; ++b) {
        if (b == a) continue;
        const double nb = counts[b];
        const double cost = nb / (nb + 1.0) * (x.row(i) - sums.row(b) / nb).squaredNorm();
        if (loss - cost > best_gain) {
          best_gain = loss - cost;
          target = b;
        }
      }
      if (target < 0) continue;
      sums.row(a) -= x.row(i);
      sums.row(target) += x.row(i);
      --counts[a];
      ++counts[target];
      run.labels[i] = target;
      moved = true;
    }
  }
  run.sse = 0.0;
  for (int i = 0; i < n; ++i) {
    const int c = run.labels[i];
    run.sse += (x.row(i) - sums.row(c) / static_cast<double>(counts[c])).squaredNorm();
  }
}

}  // namespace

SolverResult solve_kmeans(const ProblemInstance& inst, const KMeansOptions& opts) {
  if (inst.r > inst.p_hat.rows()) throw InvalidArgument("kmeans: r exceeds the number of rows");
  if (opts.restarts < 1 || opts.max_iter < 1) {
    throw InvalidArgument("kmeans: restarts and max_iter must be positive");
  }
  SolverResult out;
  out.solver_id = solver_name(SolverKind::kKMeans);
  LloydRun best;
  int unconverged = 0;
  for (int rs = 0; rs < opts.restarts; ++rs) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(rs));
    LloydRun run = lloyd(inst.p_hat, inst.r, opts.max_iter, rng);
    hartigan(inst.p_hat, inst.r, run);
    if (!run.converged) ++unconverged;
    out.trace.push_back({rs, run.sse, 0.0});
    if (run.sse < best.sse) best = std::move(run);
  }
  if (unconverged > 0) {
    out.notes.push_back(std::to_string(unconverged) + " of " + std::to_string(opts.restarts) +
                        " restarts hit max_iter before converging");
  }
  out.iterations = best.iterations;
  out.converged = best.converged;
  internal::finish_result(inst.p_hat, std::move(best.labels), inst.r, out);
  return out;
}

}  // namespace blindeep

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

#include "blindeep/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "blindeep/error.h"
#include "blindeep/signals.h"
#include "blindeep/spectral.h"

namespace blindeep {

double cost_fc(const Partition& found, const Eigen::MatrixXd& true_vecs) {
  return structural_residual(true_vecs, found);
}

double group_accuracy(std::span<const int> found_sizes, std::span<const int> true_sizes) {
  std::vector<int> a(found_sizes.begin(), found_sizes.end());
  std::vector<int> b(true_sizes.begin(), true_sizes.end());
  const std::size_t len = std::max(a.size(), b.size());
  a.resize(len, 0);
  b.resize(len, 0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  const long n = std::accumulate(b.begin(), b.end(), 0L);
  if (n <= 0) throw InvalidArgument("group_accuracy: empty reference partition");
  long wrong = 0;
  for (std::size_t k = 0; k < len; ++k) wrong += std::abs(a[k] - b[k]);
  return static_cast<double>(n - wrong) / static_cast<double>(n);
}

double group_accuracy(const Partition& found, const Partition& truth) {
  const auto fs = found.sizes();
  const auto ts = truth.sizes();
  return group_accuracy(fs, ts);
}

namespace {

// Minimum-cost perfect assignment on a square cost matrix (Hungarian method,
// O(k^3)). Returns assign[row] = column.
std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int k = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0), minv(k + 1);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  std::vector<bool> used(k + 1);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assign(k, -1);
  for (int j = 1; j <= k; ++j) {
    if (p[j] > 0) assign[p[j] - 1] = j - 1;
  }
  return assign;
}

}  // namespace

MatchResult matched_accuracy(const Partition& found, const Partition& truth) {
  if (found.n() != truth.n()) throw InvalidArgument("matched_accuracy: vertex sets differ");
  const int rf = found.r();
  const int rt = truth.r();
  const int k = std::max(rf, rt);
  // overlap(a, b) = |found_a ∩ truth_b|, zero-padded to k x k.
  Eigen::MatrixXi overlap = Eigen::MatrixXi::Zero(k, k);
  for (int v = 0; v < found.n(); ++v) ++overlap(found.label(v), truth.label(v));

  std::vector<int> best_perm;
  int best = -1;
  if (k <= 5) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int score = 0;
      for (int a = 0; a < k; ++a) score += overlap(a, perm[a]);
      if (score > best) {
        best = score;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    best_perm = hungarian(-overlap.cast<double>());
    best = 0;
    for (int a = 0; a < k; ++a) best += overlap(a, best_perm[a]);
  }

  MatchResult out;
  out.correct = best;
  out.fraction = static_cast<double>(best) / found.n();
  out.permutation.assign(rf, -1);
  for (int a = 0; a < rf; ++a) {
    if (best_perm[a] < rt) out.permutation[a] = best_perm[a];
  }
  return out;
}

EvalReport evaluate(const Partition& found, const Partition& truth,
                    const Eigen::MatrixXd& true_vecs) {
  EvalReport rep;
  rep.cost_fc = cost_fc(found, true_vecs);
  rep.group_accuracy = group_accuracy(found, truth);
  const MatchResult match = matched_accuracy(found, truth);
  rep.matched_accuracy = match.fraction;
  rep.per_cell.assign(truth.r(), CellCount{});
  for (int a = 0; a < found.r(); ++a) {
    const int t = match.permutation[a];
    if (t < 0) continue;
    for (int v : found.cell(a)) {
      if (truth.label(v) == t) {
        ++rep.per_cell[t].correct;
      } else {
        ++rep.per_cell[t].incorrect;
      }
    }
  }
  return rep;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

DeviationScan deviation_scan(const FilterMatrix& fm, double noise_var, std::span<const int> m_list,
                             std::span<const std::uint64_t> seeds, int r) {
  if (m_list.empty()) throw InvalidArgument("deviation_scan: empty m list");
  if (seeds.empty()) throw InvalidArgument("deviation_scan: no seeds");
  const Eigen::MatrixXd sigma = exact_covariance(fm, noise_var);
  const EigenDecomposition exact = eig_sym(sigma);
  const Eigen::Index n = sigma.rows();
  const double sigma_norm = exact.values.cwiseAbs().maxCoeff();
  const double eff_rank = sigma.trace() / sigma_norm;
  const double xi_r = exact.values(n - r);

  DeviationScan scan;
  scan.m_values.assign(m_list.begin(), m_list.end());
  for (int m : m_list) {
    std::vector<double> devs;
    for (std::uint64_t seed : seeds) {
      const SignalBatch batch = sample_observations(fm, m, noise_var, seed);
      const Eigen::MatrixXd est = sample_covariance(batch).matrix;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> est_eig(est, Eigen::EigenvaluesOnly);
      DeviationDiagnostics d;
      d.m = m;
      d.seed = seed;
      d.spectral_deviation = spectral_norm_sym(est - sigma);
      d.effective_rank = eff_rank;
      d.gap_margin = xi_r - est_eig.eigenvalues()(n - r - 1);
      devs.push_back(d.spectral_deviation);
      scan.rows.push_back(d);
    }
    scan.median_deviation.push_back(median(devs));
  }
  return scan;
}

}  // namespace blindeep

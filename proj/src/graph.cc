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

#include "blindeep/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "blindeep/error.h"
#include "blindeep/rng.h"

namespace blindeep {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adj_(std::max(n, 0)) {
  if (n < 0) throw InvalidArgument("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidArgument("graph: edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") out of range");
    }
    if (u == v) throw InvalidArgument("graph: self loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidArgument("graph: duplicate edge (" + std::to_string(dup->first) +
                          ", " + std::to_string(dup->second) + ")");
  }
  for (const auto& [u, v] : edges) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  edges_ = std::move(edges);
}

Graph Graph::from_adjacency(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("adjacency must be square");
  const int n = static_cast<int>(a.rows());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 0.0) throw InvalidArgument("adjacency must have zero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) != a(j, i)) throw InvalidArgument("adjacency must be symmetric");
      if (a(i, j) == 1.0) {
        edges.emplace_back(i, j);
      } else if (a(i, j) != 0.0) {
        throw InvalidArgument("adjacency must be binary");
      }
    }
  }
  return Graph(n, std::move(edges));
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& [u, v] : edges_) a(u, v) = a(v, u) = 1.0;
  return a;
}

Eigen::MatrixXi integer_laplacian(const Graph& g) {
  Eigen::MatrixXi l = Eigen::MatrixXi::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) l(u, v) = l(v, u) = -1;
  for (int v = 0; v < g.n(); ++v) l(v, v) = g.degree(v);
  return l;
}

Eigen::MatrixXd laplacian(const Graph& g) { return integer_laplacian(g).cast<double>(); }

Partition::Partition(std::vector<std::vector<int>> cells, int n) : labels_(n, -1) {
  if (n <= 0) throw InvalidArgument("partition: vertex count must be positive");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto& cell = cells[k];
    if (cell.empty()) throw InvalidArgument("partition: cell " + std::to_string(k + 1) + " is empty");
    std::sort(cell.begin(), cell.end());
    for (int v : cell) {
      if (v < 0 || v >= n) throw InvalidArgument("partition: vertex out of range");
      if (labels_[v] != -1) {
        throw InvalidArgument("partition: vertex " + std::to_string(v + 1) +
                              " appears in more than one cell");
      }
      labels_[v] = static_cast<int>(k);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (labels_[v] == -1) {
      throw InvalidArgument("partition: vertex " + std::to_string(v + 1) + " is not covered");
    }
  }
  cells_ = std::move(cells);
}

Partition Partition::from_labels(std::span<const int> labels, int r) {
  std::vector<std::vector<int>> cells(r);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0 || labels[v] >= r) throw InvalidArgument("partition: label out of range");
    cells[labels[v]].push_back(static_cast<int>(v));
  }
  return Partition(std::move(cells), static_cast<int>(labels.size()));
}

std::vector<int> Partition::sizes() const {
  std::vector<int> s;
  s.reserve(cells_.size());
  for (const auto& c : cells_) s.push_back(static_cast<int>(c.size()));
  return s;
}

bool same_up_to_labels(const Partition& a, const Partition& b) {
  if (a.n() != b.n() || a.r() != b.r()) return false;
  auto ca = a.cells();
  auto cb = b.cells();
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

IndicatorMatrix indicator_from_partition(const Partition& p, int n) {
  if (p.n() != n) throw InvalidArgument("indicator: partition does not cover n vertices");
  IndicatorMatrix out;
  out.binary = Eigen::MatrixXd::Zero(n, p.r());
  out.normalized = Eigen::MatrixXd::Zero(n, p.r());
  for (int k = 0; k < p.r(); ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.cell(k).size()));
    for (int v : p.cell(k)) {
      out.binary(v, k) = 1.0;
      out.normalized(v, k) = scale;
    }
  }
  return out;
}

Partition partition_from_indicator(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  const int r = static_cast<int>(h.cols());
  std::vector<int> labels(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < r; ++k) {
      if (h(i, k) == 0.0) continue;
      if (labels[i] != -1) {
        throw InvalidArgument("indicator: row " + std::to_string(i + 1) + " has several nonzeros");
      }
      labels[i] = k;
    }
    if (labels[i] == -1) {
      throw InvalidArgument("indicator: row " + std::to_string(i + 1) + " has no nonzero");
    }
  }
  return Partition::from_labels(labels, r);
}

namespace {

// counts(v, j) = number of neighbors of v in cell j.
Eigen::MatrixXi cell_neighbor_counts(const Graph& g, const Partition& p) {
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(g.n(), p.r());
  for (const auto& [u, v] : g.edges()) {
    ++counts(u, p.label(v));
    ++counts(v, p.label(u));
  }
  return counts;
}

}  // namespace

EepCheck is_eep(const Graph& g, const Partition& p) {
  if (p.n() != g.n()) throw InvalidArgument("is_eep: partition size does not match graph");
  const Eigen::MatrixXi counts = cell_neighbor_counts(g, p);
  for (int i = 0; i < p.r(); ++i) {
    const auto& cell = p.cell(i);
    const int first = cell.front();
    for (int j = 0; j < p.r(); ++j) {
      if (j == i) continue;
      for (int v : cell) {
        if (counts(v, j) != counts(first, j)) {
          return {false, EepWitness{i, j, first, v, counts(first, j), counts(v, j)}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

QuotientGraph quotient(const Graph& g, const Partition& p) {
  const EepCheck check = is_eep(g, p);
  if (!check.is_eep) {
    const EepWitness& w = *check.witness;
    std::ostringstream msg;
    msg << "not an EEP: in cell " << w.from_cell + 1 << ", vertex " << w.vertex_a + 1
        << " has " << w.count_a << " neighbors in cell " << w.to_cell + 1 << " but vertex "
        << w.vertex_b + 1 << " has " << w.count_b;
    throw InvalidArgument(msg.str());
  }
  const Eigen::MatrixXi counts = cell_neighbor_counts(g, p);
  const int r = p.r();
  QuotientGraph q;
  q.adjacency = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i != j) q.adjacency(i, j) = counts(p.cell(i).front(), j);
    }
  }
  q.laplacian = -q.adjacency;
  for (int i = 0; i < r; ++i) q.laplacian(i, i) = q.adjacency.row(i).sum();
  q.cell_sizes = p.sizes();
  return q;
}

void validate_planted_spec(const PlantedSpec& spec) {
  const int r = static_cast<int>(spec.sizes.size());
  if (r == 0) throw InvalidArgument("planted: no cells");
  if (spec.cross_degrees.rows() != r || spec.cross_degrees.cols() != r) {
    throw InvalidArgument("planted: b must be r x r");
  }
  if (static_cast<int>(spec.p_intra.size()) != r) {
    throw InvalidArgument("planted: need one intra-cell probability per cell");
  }
  for (int i = 0; i < r; ++i) {
    if (spec.sizes[i] <= 0) throw InvalidArgument("planted: cell sizes must be positive");
    if (!(spec.p_intra[i] >= 0.0 && spec.p_intra[i] <= 1.0)) {
      throw InvalidArgument("planted: p_intra must lie in [0, 1]");
    }
    if (spec.cross_degrees(i, i) != 0) {
      throw InvalidArgument("planted: b must have a zero diagonal (intra-cell edges come from p_intra)");
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const int bij = spec.cross_degrees(i, j);
      if (bij < 0) throw InvalidArgument("planted: b must be nonnegative");
      if (bij > spec.sizes[j]) {
        throw InvalidArgument("planted: b_" + std::to_string(i + 1) + std::to_string(j + 1) +
                              " exceeds |C_" + std::to_string(j + 1) + "|");
      }
      if (static_cast<long long>(spec.sizes[i]) * bij !=
          static_cast<long long>(spec.sizes[j]) * spec.cross_degrees(j, i)) {
        throw InvalidArgument("planted: handshake |C_i| b_ij = |C_j| b_ji fails for cells " +
                              std::to_string(i + 1) + ", " + std::to_string(j + 1));
      }
    }
  }
}

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

// Random bipartite graph between the vertex ranges [a0, a0+na) and
// [b0, b0+nb) with left degree da and right degree db.
void sample_regular_bipartite(int a0, int na, int da, int b0, int nb, int db, Rng& rng,
                              std::vector<Edge>& out) {
  constexpr int kMaxRestarts = 1000;
  std::vector<int> left;
  std::vector<int> right;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    left.clear();
    right.clear();
    for (int u = 0; u < na; ++u) left.insert(left.end(), da, a0 + u);
    for (int v = 0; v < nb; ++v) right.insert(right.end(), db, b0 + v);
    shuffle(left, rng);
    std::vector<std::vector<int>> taken(na);
    std::vector<Edge> pairs;
    pairs.reserve(left.size());
    std::vector<std::size_t> candidates;
    bool dead_end = false;
    for (int u : left) {
      auto& seen = taken[u - a0];
      candidates.clear();
      for (std::size_t s = 0; s < right.size(); ++s) {
        if (std::find(seen.begin(), seen.end(), right[s]) == seen.end()) candidates.push_back(s);
      }
      if (candidates.empty()) {
        dead_end = true;
        break;
      }
      const std::size_t pick = candidates[rng.below(candidates.size())];
      const int v = right[pick];
      right[pick] = right.back();
      right.pop_back();
      seen.push_back(v);
      pairs.emplace_back(u, v);
    }
    if (!dead_end) {
      out.insert(out.end(), pairs.begin(), pairs.end());
      return;
    }
  }
  throw NumericFailure("planted: bipartite pairing kept hitting dead ends");
}

}  // namespace

PlantedInstance generate_planted_eep(const PlantedSpec& spec, std::uint64_t seed) {
  validate_planted_spec(spec);
  const int r = static_cast<int>(spec.sizes.size());
  std::vector<int> offset(r + 1, 0);
  std::partial_sum(spec.sizes.begin(), spec.sizes.end(), offset.begin() + 1);
  const int n = offset[r];

  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const int bij = spec.cross_degrees(i, j);
      if (bij == 0) continue;
      sample_regular_bipartite(offset[i], spec.sizes[i], bij, offset[j], spec.sizes[j],
                               spec.cross_degrees(j, i), rng, edges);
    }
  }
  for (int k = 0; k < r; ++k) {
    const double p = spec.p_intra[k];
    if (p == 0.0) continue;
    for (int u = offset[k]; u < offset[k + 1]; ++u) {
      for (int v = u + 1; v < offset[k + 1]; ++v) {
        if (rng.uniform() < p) edges.emplace_back(u, v);
      }
    }
  }

  std::vector<std::vector<int>> cells(r);
  for (int k = 0; k < r; ++k) {
    for (int v = offset[k]; v < offset[k + 1]; ++v) cells[k].push_back(v);
  }
  PlantedInstance inst;
  inst.graph = Graph(n, std::move(edges));
  inst.truth = Partition(std::move(cells), n);
  inst.quotient = quotient(inst.graph, inst.truth);
  return inst;
}

}  // namespace blindeep

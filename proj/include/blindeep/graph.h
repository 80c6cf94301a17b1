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

#ifndef BLINDEEP_GRAPH_H_
#define BLINDEEP_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace blindeep {

using Edge = std::pair<int, int>;

// Undirected simple graph on vertices 0..n-1. Edges are stored once with
// u < v and kept sorted; neighbor lists are sorted too.
class Graph {
 public:
  Graph() = default;
  // Rejects self loops, duplicate edges and out-of-range endpoints. Edge
  // orientation is irrelevant on input.
  Graph(int n, std::vector<Edge> edges);

  // Builds a graph from a symmetric 0/1 matrix with zero diagonal.
  static Graph from_adjacency(const Eigen::MatrixXd& adjacency);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  Eigen::MatrixXd adjacency() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// L = D - A.
Eigen::MatrixXd laplacian(const Graph& g);
// Same matrix in integer arithmetic, for exact identities.
Eigen::MatrixXi integer_laplacian(const Graph& g);

// Ordered list of disjoint, nonempty cells covering 0..n-1. Vertices inside
// each cell are sorted; cell order is preserved as given.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<std::vector<int>> cells, int n);

  // labels[v] in 0..r-1; every label must be used.
  static Partition from_labels(std::span<const int> labels, int r);

  int n() const { return static_cast<int>(labels_.size()); }
  int r() const { return static_cast<int>(cells_.size()); }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<int>& cell(int k) const { return cells_[k]; }
  int label(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<int> sizes() const;

  bool operator==(const Partition& other) const { return cells_ == other.cells_; }

 private:
  std::vector<std::vector<int>> cells_;
  std::vector<int> labels_;
};

// True when the two partitions have the same cells in any order.
bool same_up_to_labels(const Partition& a, const Partition& b);

struct IndicatorMatrix {
  Eigen::MatrixXd binary;      // H, n x r, H(i,k) = 1 iff i in C_k
  Eigen::MatrixXd normalized;  // H * Diag(1/sqrt|C_k|)
};

IndicatorMatrix indicator_from_partition(const Partition& p, int n);

// Cell k collects the rows whose single nonzero entry sits in column k.
// Throws on rows with zero or several nonzeros and on empty columns.
Partition partition_from_indicator(const Eigen::MatrixXd& h);

struct QuotientGraph {
  Eigen::MatrixXi adjacency;  // b_ij off the diagonal, zero diagonal
  Eigen::MatrixXi laplacian;  // D - A, rows sum to zero, generally asymmetric
  std::vector<int> cell_sizes;
};

// Two vertices of cell `from_cell` that see different numbers of neighbors in
// `to_cell`.
struct EepWitness {
  int from_cell;
  int to_cell;
  int vertex_a;
  int vertex_b;
  int count_a;
  int count_b;
};

struct EepCheck {
  bool is_eep = false;
  std::optional<EepWitness> witness;
};

// Exact neighbor counting: every vertex of C_i must have the same number of
// neighbors in C_j for all i != j.
EepCheck is_eep(const Graph& g, const Partition& p);

// Throws InvalidArgument (with the witness in the message) when p is not an
// EEP of g.
QuotientGraph quotient(const Graph& g, const Partition& p);

struct PlantedSpec {
  std::vector<int> sizes;
  Eigen::MatrixXi cross_degrees;  // b, r x r, zero diagonal
  std::vector<double> p_intra;    // one probability per cell
};

struct PlantedInstance {
  Graph graph;
  Partition truth;
  QuotientGraph quotient;
};

// Validates sizes/b/p_intra: handshake |C_i| b_ij = |C_j| b_ji, b_ij <= |C_j|,
// probabilities in [0, 1]. Throws InvalidArgument on failure.
void validate_planted_spec(const PlantedSpec& spec);

// Cells are contiguous vertex ranges in the order of `sizes`. Between C_i and
// C_j the edges form a random bipartite graph in which every vertex of C_i has
// exactly b_ij neighbors in C_j (configuration-model pairing that redraws any
// stub that would duplicate an edge, restarting the pair on a dead end).
// Within a cell each pair is joined independently with probability p_intra.
PlantedInstance generate_planted_eep(const PlantedSpec& spec, std::uint64_t seed);

}  // namespace blindeep

#endif  // BLINDEEP_GRAPH_H_

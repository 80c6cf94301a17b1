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

#ifndef BLINDEEP_TESTS_FIXTURES_H_
#define BLINDEEP_TESTS_FIXTURES_H_

#include <numeric>
#include <vector>

#include "blindeep/graph.h"
#include "blindeep/rng.h"

namespace blindeep::fixtures {

// The 11-vertex graph with the three-cell EEP {1,2}, {3,4,5}, {6..11}
// (0-indexed below).
inline Graph worked_example_graph() {
  const std::vector<Edge> edges1 = {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4},  {2, 5},  {3, 6},
                                    {3, 7}, {4, 5}, {4, 8}, {4, 9}, {5, 10}, {5, 11}, {6, 7}};
  std::vector<Edge> edges;
  for (auto [u, v] : edges1) edges.emplace_back(u - 1, v - 1);
  return Graph(11, edges);
}

inline Partition worked_example_partition() {
  return Partition({{0, 1}, {2, 3, 4}, {5, 6, 7, 8, 9, 10}}, 11);
}

// Small planted instance used across suites: chain quotient with unequal
// cells.
inline PlantedSpec small_chain_spec(int size = 12, int b = 2, double p = 0.4) {
  PlantedSpec spec;
  spec.sizes = {size, size, size};
  spec.cross_degrees.resize(3, 3);
  spec.cross_degrees << 0, b, 0, b, 0, b, 0, b, 0;
  spec.p_intra = {p, p, p};
  return spec;
}

// Random sizes and a random consistent cross-degree matrix. For each pair,
// b_ij = k |C_j| / g and b_ji = k |C_i| / g with g = gcd(|C_i|, |C_j|).
inline PlantedSpec random_planted_spec(Rng& rng, int r, int min_size, int max_size) {
  PlantedSpec spec;
  for (int k = 0; k < r; ++k) {
    spec.sizes.push_back(min_size + static_cast<int>(rng.below(max_size - min_size + 1)));
  }
  spec.cross_degrees = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const int g = std::gcd(spec.sizes[i], spec.sizes[j]);
      const int k = static_cast<int>(rng.below(g + 1));
      spec.cross_degrees(i, j) = k * spec.sizes[j] / g;
      spec.cross_degrees(j, i) = k * spec.sizes[i] / g;
    }
  }
  for (int k = 0; k < r; ++k) spec.p_intra.push_back(0.2 + 0.6 * rng.uniform());
  return spec;
}

}  // namespace blindeep::fixtures

#endif  // BLINDEEP_TESTS_FIXTURES_H_

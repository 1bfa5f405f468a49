// Copyright 2026 The ppsgda Authors
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

// Communication topology of the agent network.
//
// A DirectedGraph stores who may send to whom; every vertex always carries a
// self-loop. A PerronMatrix is the column-stochastic mixing operator built
// from it by out-degree weighting, P_ij = 1/d_j for every edge j -> i, where
// d_j counts the self-loop of j.

#ifndef PPSGDA_GRAPH_HPP_
#define PPSGDA_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ppsgda {

// An edge from vertex `from` to vertex `to`: `from` sends to `to`.
// Labels are 1-based at construction, matching configuration files.
struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class DirectedGraph {
 public:
  // Builds a graph on vertices 1..n. Self-loops are added for every vertex,
  // duplicates are dropped. Throws Error(kInvalidEdge) for an endpoint outside
  // [1, n] and Error(kInvalidArgument) for n == 0.
  static DirectedGraph Build(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return out_.size(); }

  // 0-based adjacency; sorted, self included.
  const std::vector<std::size_t>& out_neighbors(std::size_t v) const {
    return out_[v];
  }
  const std::vector<std::size_t>& in_neighbors(std::size_t v) const {
    return in_[v];
  }
  std::size_t out_degree(std::size_t v) const { return out_[v].size(); }
  bool has_edge(std::size_t from0, std::size_t to0) const;
  std::size_t edge_count() const;

  // All edges, 1-based, self-loops included, sorted by (from, to).
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

// Strongly connected components via Tarjan's algorithm (iterative). Returns
// the component id of every vertex; ids are in reverse topological order.
std::vector<std::size_t> StronglyConnectedComponents(const DirectedGraph& g);

bool IsStronglyConnected(const DirectedGraph& g);

// Named topologies. Ring is 1 -> 2 -> ... -> n -> 1.
DirectedGraph RingGraph(std::size_t n);
DirectedGraph CompleteGraph(std::size_t n);

// Random Hamiltonian cycle plus Bernoulli(edge_probability) extra edges;
// strongly connected by construction and deterministic in `seed`.
DirectedGraph RandomStronglyConnectedGraph(std::size_t n,
                                           double edge_probability,
                                           std::uint64_t seed);

struct PerronMatrix {
  Eigen::MatrixXd entries;
  // Positive right eigenvector for eigenvalue 1, entries sum to 1.
  Eigen::VectorXd perron_vector;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

// Out-degree weighting plus a power-iteration Perron vector (tolerance 1e-12
// on ||P w - w||_inf). Throws Error(kNotStronglyConnected).
PerronMatrix PerronFromOutDegrees(const DirectedGraph& g);

// Power iteration on any column-stochastic primitive matrix.
Eigen::VectorXd PerronVector(const Eigen::MatrixXd& p, double tolerance = 1e-12,
                             std::size_t max_iterations = 10'000'000);

}  // namespace ppsgda

#endif  // PPSGDA_GRAPH_HPP_

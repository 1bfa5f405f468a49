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

#include "ppsgda/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "ppsgda/error.hpp"

namespace ppsgda {

DirectedGraph DirectedGraph::Build(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs at least one vertex");
  }
  DirectedGraph g;
  g.out_.resize(n);
  g.in_.resize(n);
  for (std::size_t v = 0; v < n; ++v) g.out_[v].push_back(v);
  for (const Edge& e : edges) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      throw Error(ErrorCode::kInvalidEdge,
                  "edge (" + std::to_string(e.from) + ", " +
                      std::to_string(e.to) + ") outside [1, " +
                      std::to_string(n) + "]");
    }
    g.out_[e.from - 1].push_back(e.to - 1);
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& out = g.out_[v];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::size_t w : out) g.in_[w].push_back(v);
  }
  return g;
}

bool DirectedGraph::has_edge(std::size_t from0, std::size_t to0) const {
  const auto& out = out_.at(from0);
  return std::binary_search(out.begin(), out.end(), to0);
}

std::size_t DirectedGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& out : out_) count += out.size();
  return count;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count());
  for (std::size_t v = 0; v < out_.size(); ++v) {
    for (std::size_t w : out_[v]) result.push_back({v + 1, w + 1});
  }
  return result;
}

std::vector<std::size_t> StronglyConnectedComponents(const DirectedGraph& g) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), component(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  // (vertex, position of the next out-neighbor to explore)
  std::vector<std::pair<std::size_t, std::size_t>> call;
  std::size_t next_index = 0;
  std::size_t next_component = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& out = g.out_neighbors(v);
      if (pos < out.size()) {
        const std::size_t w = out[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
      if (low[finished] == index[finished]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = next_component;
        } while (w != finished);
        ++next_component;
      }
    }
  }
  return component;
}

bool IsStronglyConnected(const DirectedGraph& g) {
  const auto component = StronglyConnectedComponents(g);
  return std::all_of(component.begin(), component.end(),
                     [&](std::size_t c) { return c == component.front(); });
}

DirectedGraph RingGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= n; ++v) edges.push_back({v, v % n + 1});
  return DirectedGraph::Build(n, edges);
}

DirectedGraph CompleteGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= n; ++v) {
    for (std::size_t w = 1; w <= n; ++w) edges.push_back({v, w});
  }
  return DirectedGraph::Build(n, edges);
}

DirectedGraph RandomStronglyConnectedGraph(std::size_t n,
                                           double edge_probability,
                                           std::uint64_t seed) {
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < n; ++k) {
    edges.push_back({order[k], order[(k + 1) % n]});
  }
  std::bernoulli_distribution extra(edge_probability);
  for (std::size_t v = 1; v <= n; ++v) {
    for (std::size_t w = 1; w <= n; ++w) {
      if (v != w && extra(rng)) edges.push_back({v, w});
    }
  }
  return DirectedGraph::Build(n, edges);
}

Eigen::VectorXd PerronVector(const Eigen::MatrixXd& p, double tolerance,
                             std::size_t max_iterations) {
  const Eigen::Index n = p.rows();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd next = p * w;
    next /= next.sum();
    const double change = (next - w).lpNorm<Eigen::Infinity>();
    w = std::move(next);
    if (change <= tolerance && (p * w - w).lpNorm<Eigen::Infinity>() <= tolerance) {
      return w;
    }
  }
  throw Error(ErrorCode::kNotConverged,
              "power iteration did not reach the Perron vector");
}

PerronMatrix PerronFromOutDegrees(const DirectedGraph& g) {
  if (!IsStronglyConnected(g)) {
    throw Error(ErrorCode::kNotStronglyConnected,
                "communication graph is not strongly connected");
  }
  const std::size_t n = g.size();
  PerronMatrix result;
  result.entries = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = 1.0 / static_cast<double>(g.out_degree(j));
    for (std::size_t i : g.out_neighbors(j)) result.entries(i, j) = weight;
  }
  result.perron_vector = PerronVector(result.entries);
  return result;
}

}  // namespace ppsgda

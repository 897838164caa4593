#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stiefel/errors.hpp"

namespace stiefel {

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;
};

struct Neighbor {
  std::size_t node;
  double weight;
};

/// Undirected graph with strictly positive symmetric weights on 0-based
/// nodes. Kept both as an edge list (for sums over edges) and as
/// per-node neighbor lists (for sums over neighbors).
class WeightedGraph {
 public:
  /// Throws InvalidSize for self-loops, duplicate edges, out-of-range ids
  /// or nonpositive weights.
  WeightedGraph(std::size_t n_nodes, std::vector<Edge> edges);

  std::size_t n_nodes() const noexcept { return adjacency_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Neighbors of `i` with edge weights. Throws NodeOutOfRange.
  const std::vector<Neighbor>& neighbors(std::size_t i) const;

  /// Weight of edge {i,j}, 0 when absent.
  double weight(std::size_t i, std::size_t j) const;

  double max_weight() const noexcept;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Ring {i, i+1 mod N}; N >= 3.
WeightedGraph cycle_graph(std::size_t n, double weight = 1.0);

/// All N(N-1)/2 edges; N >= 2.
WeightedGraph complete_graph(std::size_t n, double weight = 1.0);

/// Breadth-first search from node 0 reaches every node.
bool is_connected(const WeightedGraph& g);

inline const std::vector<Neighbor>& neighbors(const WeightedGraph& g,
                                              std::size_t i) {
  return g.neighbors(i);
}

/// Accepts `{"n_nodes": N, "edges": [[i, j, w], ...]}` or
/// `{"family": "cycle"|"complete", "n_nodes": N, "weight": w}`.
/// Unknown keys are rejected with ConfigError.
WeightedGraph graph_from_json(const nlohmann::json& j);

/// Explicit edge-list form.
nlohmann::json graph_to_json(const WeightedGraph& g);

}  // namespace stiefel

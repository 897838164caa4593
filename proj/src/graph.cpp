#include "stiefel/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace stiefel {

WeightedGraph::WeightedGraph(std::size_t n_nodes, std::vector<Edge> edges)
    : adjacency_(n_nodes) {
  if (n_nodes == 0) throw InvalidSize("graph needs at least one node");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges) {
    if (e.i >= n_nodes || e.j >= n_nodes) {
      throw InvalidSize("edge {" + std::to_string(e.i) + "," +
                        std::to_string(e.j) + "} references a missing node");
    }
    if (e.i == e.j) throw InvalidSize("self-loop at node " + std::to_string(e.i));
    if (!(e.weight > 0.0)) throw InvalidSize("edge weights must be positive");
    auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second) {
      throw InvalidSize("duplicate edge {" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + "}");
    }
    adjacency_[e.i].push_back({e.j, e.weight});
    adjacency_[e.j].push_back({e.i, e.weight});
  }
  edges_ = std::move(edges);
}

const std::vector<Neighbor>& WeightedGraph::neighbors(std::size_t i) const {
  if (i >= adjacency_.size()) {
    throw NodeOutOfRange("node " + std::to_string(i) + " out of range");
  }
  return adjacency_[i];
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
  for (const Neighbor& nb : neighbors(i)) {
    if (nb.node == j) return nb.weight;
  }
  return 0.0;
}

double WeightedGraph::max_weight() const noexcept {
  double w = 0.0;
  for (const Edge& e : edges_) w = std::max(w, e.weight);
  return w;
}

WeightedGraph cycle_graph(std::size_t n, double weight) {
  if (n < 3) throw InvalidSize("cycle graph needs N >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, weight});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph complete_graph(std::size_t n, double weight) {
  if (n < 2) throw InvalidSize("complete graph needs N >= 2");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, weight});
  }
  return WeightedGraph(n, std::move(edges));
}

bool is_connected(const WeightedGraph& g) {
  std::vector<bool> seen(g.n_nodes(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (const Neighbor& nb : g.neighbors(u)) {
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        ++reached;
        frontier.push(nb.node);
      }
    }
  }
  return reached == g.n_nodes();
}

namespace {

void reject_unknown(const nlohmann::json& j,
                    std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; })) {
      throw ConfigError("graph: unknown field '" + it.key() + "'");
    }
  }
}

}  // namespace

WeightedGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("graph: expected an object");
  if (!j.contains("n_nodes") || !j["n_nodes"].is_number_integer() ||
      j["n_nodes"].get<long long>() < 1) {
    throw ConfigError("graph.n_nodes: expected a positive integer");
  }
  const auto n = j["n_nodes"].get<std::size_t>();
  try {
    if (j.contains("family")) {
      reject_unknown(j, {"family", "n_nodes", "weight"});
      const double w = j.value("weight", 1.0);
      const std::string family = j["family"].get<std::string>();
      if (family == "cycle") return cycle_graph(n, w);
      if (family == "complete") return complete_graph(n, w);
      throw ConfigError("graph.family: expected \"cycle\" or \"complete\", got \"" +
                        family + "\"");
    }
    reject_unknown(j, {"n_nodes", "edges"});
    if (!j.contains("edges") || !j["edges"].is_array()) {
      throw ConfigError("graph.edges: expected an array of [i, j, weight]");
    }
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 3) {
        throw ConfigError("graph.edges: each edge must be [i, j, weight]");
      }
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                       e[2].get<double>()});
    }
    return WeightedGraph(n, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("graph: ") + ex.what());
  } catch (const InvalidSize& ex) {
    throw ConfigError(std::string("graph: ") + ex.what());
  }
}

nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.weight});
  return {{"n_nodes", g.n_nodes()}, {"edges", edges}};
}

}  // namespace stiefel

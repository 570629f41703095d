#pragma once

#include <random>
#include <sstream>
#include <vector>

#include "wembed/embedding.hpp"
#include "wembed/graph.hpp"
#include "wembed/loss.hpp"
#include "wembed/rng.hpp"

namespace wembed::test {

inline Graph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

// Erdos-Renyi-style random graph on n nodes with edge probability p.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(mix64(seed));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (unit_double(rng) < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Random embedding with positions in [0, span)^dim and weights log-uniform in
// [1, max_weight).
inline WeightedEmbedding random_embedding(std::size_t n, int dim, double span, double max_weight,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(mix64(seed ^ 0xabcdefULL));
  WeightedEmbedding e;
  e.dim = dim;
  e.positions.resize(n * static_cast<std::size_t>(dim));
  for (double& c : e.positions) c = span * unit_double(rng);
  e.weights.resize(n);
  for (double& w : e.weights) w = std::exp(unit_double(rng) * std::log(max_weight));
  return e;
}

// Gradient of the total linear loss assembled pair by pair over all Theta(n^2)
// pairs, independent of the index-accelerated path.
inline std::vector<double> allpairs_gradient(const Graph& g, const WeightedEmbedding& e,
                                             const LossSpec& spec, std::uint64_t iteration = 0) {
  const std::size_t n = g.node_count();
  std::vector<double> grad(n * static_cast<std::size_t>(e.dim), 0.0);
  for (NodeId u = 0; u < n; ++u) {
    double* row = grad.data() + static_cast<std::size_t>(u) * e.dim;
    for (NodeId v = 0; v < n; ++v) {
      if (v == u) continue;
      const auto force = g.has_edge(u, v) ? edge_force(e, spec, u, v)
                                          : nonedge_force(e, spec, u, v, iteration);
      for (int k = 0; k < e.dim; ++k) row[k] -= force[k];
    }
  }
  return grad;
}

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t visited = 0;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    ++visited;
    for (NodeId v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return visited == n;
}

}  // namespace wembed::test

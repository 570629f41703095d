#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wembed/errors.hpp"

namespace wembed {

using NodeId = std::uint32_t;

// Immutable undirected graph: contiguous internal ids 0..n-1, sorted neighbor
// lists, no self-loops, no parallel edges. Safe for concurrent reads.
class Graph {
 public:
  Graph() = default;

  // Builds the graph from an edge list. Self-loops are dropped and duplicate
  // edges merged. `labels` maps internal id -> original label; when empty,
  // nodes are labeled by their decimal id.
  static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId u) const { return labels_[u]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Calls f(u, v) once per edge with u < v.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < node_count(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) f(u, v);
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

// Reads the shared edge-list text format: two whitespace-separated node
// tokens per line, blank lines and lines starting with '#' or '%' ignored.
// Labels are arbitrary strings and get contiguous ids in order of first
// appearance. Throws ParseError on malformed lines (with the line number)
// and on an empty graph.
Graph parse_edge_list(std::istream& in);

// Writes one "label_u label_v" line per edge (u < v in internal id order).
void write_edge_list(const Graph& g, std::ostream& out);

// Induced subgraph on the largest connected component, ids remapped
// contiguously in old-id order. Ties between equally sized components are
// broken towards the component containing the smallest internal id.
Graph largest_connected_component(const Graph& g);

struct DegreeStats {
  std::size_t min = 0;
  double mean = 0.0;
  std::size_t max = 0;
};

DegreeStats degree_stats(const Graph& g);

// log10 of the coefficient of variation of the degree sequence (population
// standard deviation over mean). nullopt for regular graphs (sd = 0).
std::optional<double> heterogeneity(const Graph& g);

}  // namespace wembed

#include "wembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

namespace wembed {

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n)
    throw ConfigError("label count does not match node count");

  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ConfigError("edge endpoint out of range");
    if (u == v) continue;  // self-loops dropped
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  Graph g;
  g.offsets_.resize(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    auto& nb = adj[u];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    g.offsets_[u + 1] = g.offsets_[u] + nb.size();
  }
  g.neighbors_.reserve(g.offsets_[n]);
  for (auto& nb : adj) g.neighbors_.insert(g.neighbors_.end(), nb.begin(), nb.end());
  g.edge_count_ = g.neighbors_.size() / 2;

  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t u = 0; u < n; ++u) labels.push_back(std::to_string(u));
  }
  g.labels_ = std::move(labels);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#' || c == '%';
  }
  return true;  // only whitespace
}

std::vector<std::string_view> split_tokens(const std::string& line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.emplace_back(line.data() + i, j - i);
    i = j;
  }
  return tokens;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::unordered_map<std::string, NodeId> id_of;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](std::string_view token) -> NodeId {
    auto it = id_of.find(std::string(token));
    if (it != id_of.end()) return it->second;
    const NodeId id = static_cast<NodeId>(labels.size());
    labels.emplace_back(token);
    id_of.emplace(labels.back(), id);
    return id;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2)
      throw ParseError("line " + std::to_string(lineno) + ": expected two node tokens, got " +
                       std::to_string(tokens.size()));
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  if (labels.empty()) throw ParseError("empty graph: no edges found");
  return Graph::from_edges(labels.size(), edges, std::move(labels));
}

void write_edge_list(const Graph& g, std::ostream& out) {
  g.for_each_edge([&](NodeId u, NodeId v) { out << g.label(u) << ' ' << g.label(v) << '\n'; });
}

Graph largest_connected_component(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> component(n, -1);
  std::vector<NodeId> queue;
  std::size_t best_size = 0;
  std::int64_t best_comp = -1;
  std::int64_t next_comp = 0;

  // Seeds are scanned in increasing id order, so the first component reaching
  // the maximum size is also the one containing the smallest id.
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    const std::int64_t c = next_comp++;
    component[s] = c;
    queue.assign(1, s);
    std::size_t size = 0;
    while (!queue.empty()) {
      const NodeId u = queue.back();
      queue.pop_back();
      ++size;
      for (NodeId v : g.neighbors(u)) {
        if (component[v] < 0) {
          component[v] = c;
          queue.push_back(v);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_comp = c;
    }
  }

  std::vector<NodeId> old_ids;
  old_ids.reserve(best_size);
  std::vector<NodeId> new_id(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    if (component[u] == best_comp) {
      new_id[u] = static_cast<NodeId>(old_ids.size());
      old_ids.push_back(u);
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::string> labels;
  labels.reserve(old_ids.size());
  for (NodeId u : old_ids) {
    labels.push_back(g.label(u));
    for (NodeId v : g.neighbors(u))
      if (u < v && component[v] == best_comp) edges.emplace_back(new_id[u], new_id[v]);
  }
  return Graph::from_edges(old_ids.size(), edges, std::move(labels));
}

DegreeStats degree_stats(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw ConfigError("degree stats of an empty graph");
  DegreeStats s;
  s.min = g.degree(0);
  s.max = g.degree(0);
  std::size_t total = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t d = g.degree(u);
    s.min = std::min(s.min, d);
    s.max = std::max(s.max, d);
    total += d;
  }
  s.mean = static_cast<double>(total) / static_cast<double>(n);
  return s;
}

std::optional<double> heterogeneity(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw ConfigError("heterogeneity of an empty graph");
  double mean = 0.0;
  for (NodeId u = 0; u < n; ++u) mean += static_cast<double>(g.degree(u));
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const double d = static_cast<double>(g.degree(u)) - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);  // population variance
  const double sd = std::sqrt(var);
  if (sd == 0.0) return std::nullopt;
  return std::log10(sd / mean);
}

}  // namespace wembed

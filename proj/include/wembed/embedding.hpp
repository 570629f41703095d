#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wembed/graph.hpp"

namespace wembed {

// A node embedding in weighted space: a position p_v in R^d plus a strictly
// positive weight w_v per node. The similarity measure between nodes is
// ||p_u - p_v|| / (w_u * w_v)^(1/d). Concurrent reads are safe; the optimizer
// takes exclusive access while updating positions.
struct WeightedEmbedding {
  int dim = 0;
  std::vector<double> positions;  // node_count * dim, row-major
  std::vector<double> weights;    // node_count

  std::size_t node_count() const { return weights.size(); }

  std::span<const double> position(NodeId v) const {
    return {positions.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
  }
  std::span<double> position(NodeId v) {
    return {positions.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
  }
};

// Throws ConfigError unless dim >= 1, all weights are strictly positive, all
// coordinates are finite, and the array sizes agree.
void validate(const WeightedEmbedding& e);

// Plain Euclidean distance, accumulated coordinate by coordinate in
// increasing order. Every distance in this project reduces to this routine,
// so uniform weights reproduce Euclidean results bit for bit.
inline double euclidean_distance(const WeightedEmbedding& e, NodeId u, NodeId v) {
  const double* a = e.positions.data() + static_cast<std::size_t>(u) * e.dim;
  const double* b = e.positions.data() + static_cast<std::size_t>(v) * e.dim;
  double sq = 0.0;
  for (int k = 0; k < e.dim; ++k) {
    const double dk = a[k] - b[k];
    sq += dk * dk;
  }
  return std::sqrt(sq);
}

// (w_u * w_v)^(1/d), the denominator of the weighted distance.
inline double weight_norm_factor(const WeightedEmbedding& e, NodeId u, NodeId v) {
  return std::pow(e.weights[u] * e.weights[v], 1.0 / e.dim);
}

// Weighted distance ||p_u - p_v|| / (w_u w_v)^(1/d). Symmetric and positively
// homogeneous in the positions; not a metric (the triangle inequality may
// fail, which is expected and exploited).
inline double weighted_distance(const WeightedEmbedding& e, NodeId u, NodeId v) {
  return euclidean_distance(e, u, v) / weight_norm_factor(e, u, v);
}

// Degree-based weights w_v = deg(v)^(dim/latent_dim). The graph must have no
// isolated nodes (reduce to the largest connected component first); a
// degree-0 node throws ConfigError.
std::vector<double> assign_weights(const Graph& g, int dim, int latent_dim = 8);

// All-ones weights; turns the weighted space into plain Euclidean space.
std::vector<double> uniform_weights(std::size_t n);

// Uniform positions in [0,1)^dim, reproducible from the seed.
std::vector<double> init_positions(std::size_t n, int dim, std::uint64_t seed);

// Embedding file format:
//   # wembed d=<dim> l=<threshold>
//   <label> <weight> <c_1> ... <c_d>
// Weights and coordinates are written in scientific notation with 17
// significant digits, so a read-back reproduces the doubles exactly.
void write_embedding(const WeightedEmbedding& e, std::span<const std::string> labels,
                     double threshold, std::ostream& out);

struct NamedEmbedding {
  WeightedEmbedding embedding;
  std::vector<std::string> labels;  // row order of the file
  double threshold = 1.0;
};

NamedEmbedding read_embedding(std::istream& in);

}  // namespace wembed

#pragma once

#include <cstdint>
#include <vector>

#include "wembed/embedding.hpp"

namespace wembed {

// Squared Euclidean distance over dim coordinates, accumulated in increasing
// coordinate order. The R-tree leaf test and the linear-scan reference both
// use this routine, so their accept decisions are identical.
inline double squared_euclidean(const double* a, const double* b, int dim) {
  double sq = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double dk = a[k] - b[k];
    sq += dk * dk;
  }
  return sq;
}

// Static d-dimensional R-tree over a point set, bulk-loaded with
// sort-tile-recursive packing. Answers exact Euclidean ball queries: a query
// returns precisely the points with ||p - center|| <= radius. Immutable after
// construction; concurrent queries are safe.
class RTree {
 public:
  RTree() = default;

  // `coords` holds ids.size() rows of `dim` coordinates, row-major.
  RTree(int dim, std::vector<double> coords, std::vector<std::uint32_t> ids,
        int leaf_capacity = 16);

  // Appends the ids of all points within `radius` of `center` to `out`.
  // Emission order is deterministic (storage order of the packed tree).
  void query_ball(const double* center, double radius, std::vector<std::uint32_t>& out) const;

  std::size_t size() const { return ids_.size(); }

 private:
  struct Node {
    std::uint32_t first = 0;  // leaf: first point row; internal: first child
    std::uint32_t count = 0;
    bool leaf = true;
  };

  double min_sq_distance(std::uint32_t node, const double* center) const;

  int dim_ = 0;
  std::vector<double> coords_;        // points reordered into leaf runs
  std::vector<std::uint32_t> ids_;    // parallel to coords_ rows
  std::vector<Node> nodes_;
  std::vector<double> box_min_;       // nodes_.size() * dim_
  std::vector<double> box_max_;
  std::uint32_t root_ = 0;
};

// Weight class index i with 2^(i-1) <= w < 2^i.
int weight_class_of(double w);

// One R-tree per non-empty weight class V_i = {v : 2^(i-1) <= w_v < 2^i},
// built over the current positions. Querying class i with radius
// l * (w_u * 2^i)^(1/d) yields every v in V_i with weighted distance at most
// l to u plus false positives with weighted distance at most 2^(1/d) * l.
// Rebuilt from scratch each optimizer iteration; immutable afterwards.
class WeightClassForest {
 public:
  explicit WeightClassForest(const WeightedEmbedding& e, int leaf_capacity = 16);

  // All candidate repulsion partners of u: the union of the per-class ball
  // queries, excluding u itself. Guaranteed superset of
  // {v != u : weighted_distance(u, v) <= ell}; every candidate satisfies
  // weighted_distance(u, v) <= 2^(1/d) * ell (plus rounding slack).
  void query_candidates(const WeightedEmbedding& e, NodeId u, double ell,
                        std::vector<NodeId>& out) const;

  struct WeightClass {
    int index = 0;
    std::vector<NodeId> members;
    RTree tree;
  };

  const std::vector<WeightClass>& classes() const { return classes_; }

 private:
  std::vector<WeightClass> classes_;
  int dim_ = 0;
};

}  // namespace wembed

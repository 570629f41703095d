#include "wembed/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "wembed/errors.hpp"

namespace wembed {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

RTree::RTree(int dim, std::vector<double> coords, std::vector<std::uint32_t> ids,
             int leaf_capacity) {
  if (dim < 1) throw ConfigError("R-tree dimension must be >= 1");
  if (leaf_capacity < 2) throw ConfigError("R-tree leaf capacity must be >= 2");
  if (coords.size() != ids.size() * static_cast<std::size_t>(dim))
    throw ConfigError("R-tree coordinate/id sizes disagree");
  dim_ = dim;
  const std::size_t n = ids.size();
  if (n == 0) return;

  // Sort-tile-recursive packing: recursively sort a permutation of the rows
  // along one axis, cut into equal slabs, and recurse with the next axis;
  // the final order is chopped into leaves of `leaf_capacity` points.
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);

  const std::size_t cap = static_cast<std::size_t>(leaf_capacity);
  struct LeafRun {
    std::size_t first, count;
  };
  std::vector<LeafRun> leaves;

  auto sort_by_axis = [&](std::size_t lo, std::size_t hi, int axis) {
    std::sort(perm.begin() + lo, perm.begin() + hi, [&](std::uint32_t a, std::uint32_t b) {
      const double ca = coords[static_cast<std::size_t>(a) * dim + axis];
      const double cb = coords[static_cast<std::size_t>(b) * dim + axis];
      if (ca != cb) return ca < cb;
      return ids[a] < ids[b];
    });
  };

  auto tile = [&](auto&& self, std::size_t lo, std::size_t hi, int axis) -> void {
    const std::size_t len = hi - lo;
    if (len <= cap) {
      leaves.push_back({lo, len});
      return;
    }
    sort_by_axis(lo, hi, axis);
    if (axis + 1 >= dim) {
      for (std::size_t i = lo; i < hi; i += cap) leaves.push_back({i, std::min(cap, hi - i)});
      return;
    }
    const std::size_t pages = ceil_div(len, cap);
    const auto slabs = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(pages), 1.0 / (dim - axis))));
    const std::size_t slab_len = ceil_div(len, std::max<std::size_t>(slabs, 1));
    for (std::size_t i = lo; i < hi; i += slab_len)
      self(self, i, std::min(i + slab_len, hi), axis + 1);
  };
  tile(tile, 0, n, 0);

  coords_.resize(coords.size());
  ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids_[i] = ids[perm[i]];
    for (int k = 0; k < dim; ++k)
      coords_[i * dim + k] = coords[static_cast<std::size_t>(perm[i]) * dim + k];
  }

  auto push_node = [&](std::uint32_t first, std::uint32_t count, bool leaf) {
    nodes_.push_back({first, count, leaf});
    box_min_.insert(box_min_.end(), dim, 0.0);
    box_max_.insert(box_max_.end(), dim, 0.0);
    double* bmin = box_min_.data() + (nodes_.size() - 1) * dim;
    double* bmax = box_max_.data() + (nodes_.size() - 1) * dim;
    for (int k = 0; k < dim; ++k) {
      bmin[k] = std::numeric_limits<double>::infinity();
      bmax[k] = -std::numeric_limits<double>::infinity();
    }
    for (std::uint32_t c = 0; c < count; ++c) {
      const double* src = leaf ? coords_.data() + (first + c) * static_cast<std::size_t>(dim)
                               : box_min_.data() + (first + c) * static_cast<std::size_t>(dim);
      const double* src_hi = leaf ? src : box_max_.data() + (first + c) * static_cast<std::size_t>(dim);
      for (int k = 0; k < dim; ++k) {
        bmin[k] = std::min(bmin[k], src[k]);
        bmax[k] = std::max(bmax[k], src_hi[k]);
      }
    }
  };

  for (const LeafRun& run : leaves)
    push_node(static_cast<std::uint32_t>(run.first), static_cast<std::uint32_t>(run.count), true);

  // Pack consecutive runs of nodes into parents until a single root remains.
  std::uint32_t level_first = 0;
  std::uint32_t level_count = static_cast<std::uint32_t>(leaves.size());
  while (level_count > 1) {
    const std::uint32_t next_first = static_cast<std::uint32_t>(nodes_.size());
    for (std::uint32_t i = 0; i < level_count; i += cap) {
      const std::uint32_t take = std::min<std::uint32_t>(static_cast<std::uint32_t>(cap),
                                                          level_count - i);
      push_node(level_first + i, take, false);
    }
    level_first = next_first;
    level_count = static_cast<std::uint32_t>(nodes_.size()) - next_first;
  }
  root_ = level_first;
}

double RTree::min_sq_distance(std::uint32_t node, const double* center) const {
  const double* bmin = box_min_.data() + static_cast<std::size_t>(node) * dim_;
  const double* bmax = box_max_.data() + static_cast<std::size_t>(node) * dim_;
  double sq = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double below = bmin[k] - center[k];
    const double above = center[k] - bmax[k];
    const double gap = std::max({0.0, below, above});
    sq += gap * gap;
  }
  return sq;
}

void RTree::query_ball(const double* center, double radius,
                       std::vector<std::uint32_t>& out) const {
  if (nodes_.empty()) return;
  const double rsq = radius * radius;
  // Worst-case stack depth is levels * (fanout - 1) + 1; with fanout 16 and
  // 32-bit ids that is at most 8 * 15 + 1.
  std::uint32_t stack[160];
  int top = 0;
  stack[top++] = root_;
  while (top > 0) {
    const std::uint32_t ni = stack[--top];
    const Node& node = nodes_[ni];
    if (min_sq_distance(ni, center) > rsq) continue;
    if (node.leaf) {
      for (std::uint32_t c = 0; c < node.count; ++c) {
        const std::size_t row = node.first + c;
        if (squared_euclidean(coords_.data() + row * dim_, center, dim_) <= rsq)
          out.push_back(ids_[row]);
      }
    } else {
      // children are contiguous; push in reverse so traversal stays in
      // storage order and emission is deterministic
      for (std::uint32_t c = node.count; c > 0; --c) stack[top++] = node.first + c - 1;
    }
  }
}

int weight_class_of(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("weight must be positive and finite");
  return std::ilogb(w) + 1;
}

WeightClassForest::WeightClassForest(const WeightedEmbedding& e, int leaf_capacity) {
  dim_ = e.dim;
  std::map<int, std::vector<NodeId>> groups;
  for (NodeId v = 0; v < e.node_count(); ++v) groups[weight_class_of(e.weights[v])].push_back(v);
  classes_.reserve(groups.size());
  for (auto& [index, members] : groups) {
    std::vector<double> coords(members.size() * static_cast<std::size_t>(e.dim));
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto p = e.position(members[i]);
      std::copy(p.begin(), p.end(), coords.begin() + i * e.dim);
    }
    RTree tree(e.dim, std::move(coords), std::vector<std::uint32_t>(members.begin(), members.end()),
               leaf_capacity);
    classes_.push_back({index, std::move(members), std::move(tree)});
  }
}

void WeightClassForest::query_candidates(const WeightedEmbedding& e, NodeId u, double ell,
                                         std::vector<NodeId>& out) const {
  out.clear();
  const double* center = e.positions.data() + static_cast<std::size_t>(u) * dim_;
  for (const auto& wc : classes_) {
    // Inflate the query radius by one part in 1e12 so pairs sitting exactly
    // on the boundary survive the rounding of pow and sqrt.
    const double radius = ell * std::pow(e.weights[u] * std::exp2(static_cast<double>(wc.index)),
                                         1.0 / dim_) *
                          (1.0 + 1e-12);
    wc.tree.query_ball(center, radius, out);
  }
  const auto self = std::find(out.begin(), out.end(), u);
  if (self != out.end()) out.erase(self);
}

}  // namespace wembed

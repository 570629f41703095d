#pragma once

#include <cstdint>
#include <vector>

#include "wembed/embedding.hpp"
#include "wembed/graph.hpp"

namespace wembed {

// Loss families over the weighted distance x of a node pair. Each family has
// an attracting term (punishes distant neighbors) and a repelling term
// (punishes close non-neighbors); their sum is minimal at the threshold.
// Only Linear has a gradient path and optimizer support; the other families
// are loss evaluators for comparison.
enum class LossFamily {
  Linear,                // attr max(x-l, 0),     rep max(l-x, 0)
  FruchtermanReingold,   // attr x^3/(3l),        rep -l^2 log(x)
  MaxentStress,          // attr (x-l)^2/l^2,     rep -log(x)
  SigmoidLogLikelihood,  // attr -log(sig(l-x)),  rep -log(sig(x-l))
};

struct LossSpec {
  LossFamily family = LossFamily::Linear;
  double threshold = 1.0;  // l > 0
};

struct LossTerms {
  double attr = 0.0;
  double rep = 0.0;
};

// Both loss terms of the chosen family at distance x >= 0. Throws ConfigError
// for x = 0 with a family whose repelling term contains log(x).
LossTerms loss_terms(const LossSpec& spec, double x);

// Attractive force on u from edge uv (Linear family): the unit vector from
// p_u towards p_v scaled by (w_u w_v)^(-1/d) when dist(u,v) > l, zero
// otherwise (the indicator is strict, so the force vanishes at exactly l).
std::vector<double> edge_force(const WeightedEmbedding& e, const LossSpec& spec, NodeId u,
                               NodeId v);

// Repulsive force on u from non-edge uv (Linear family): the unit vector from
// p_v towards p_u scaled by (w_u w_v)^(-1/d) when 0 < dist(u,v) < l, zero
// when dist >= l. Coincident positions get a deterministic pseudo-random unit
// direction derived from (min id, max id, iteration), so runs reproduce and
// the forces on the two endpoints stay exact opposites.
std::vector<double> nonedge_force(const WeightedEmbedding& e, const LossSpec& spec, NodeId u,
                                  NodeId v, std::uint64_t iteration = 0);

// The unit direction used for a coincident pair; `a < b` expected.
std::vector<double> coincident_direction(int dim, NodeId a, NodeId b, std::uint64_t iteration);

// Total loss summed over all Theta(n^2) node pairs: attracting terms over
// edges plus repelling terms over non-edges, unnormalized. Quadratic work;
// meant for desk-scale evaluation and as the reference for the
// index-accelerated path.
double total_loss_allpairs(const Graph& g, const WeightedEmbedding& e, const LossSpec& spec);

}  // namespace wembed

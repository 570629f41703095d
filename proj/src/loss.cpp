#include "wembed/loss.hpp"

#include <cmath>
#include <string>

#include "wembed/rng.hpp"

namespace wembed {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_spec(const LossSpec& spec) {
  if (!(spec.threshold > 0.0)) throw ConfigError("loss threshold must be > 0");
}

}  // namespace

LossTerms loss_terms(const LossSpec& spec, double x) {
  check_spec(spec);
  if (x < 0.0) throw ConfigError("distance must be nonnegative");
  const double l = spec.threshold;
  switch (spec.family) {
    case LossFamily::Linear:
      return {std::max(x - l, 0.0), std::max(l - x, 0.0)};
    case LossFamily::FruchtermanReingold:
      if (x == 0.0) throw ConfigError("repelling term is singular at distance 0");
      return {x * x * x / (3.0 * l), -l * l * std::log(x)};
    case LossFamily::MaxentStress:
      if (x == 0.0) throw ConfigError("repelling term is singular at distance 0");
      return {(x - l) * (x - l) / (l * l), -std::log(x)};
    case LossFamily::SigmoidLogLikelihood:
      return {-std::log(logistic(l - x)), -std::log(logistic(x - l))};
  }
  throw ConfigError("unknown loss family");
}

std::vector<double> coincident_direction(int dim, NodeId a, NodeId b, std::uint64_t iteration) {
  std::mt19937_64 rng(hash_combine(hash_combine(a, b), iteration));
  std::vector<double> dir(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (int k = 0; k < dim; ++k) {
      dir[k] = standard_normal(rng);
      norm += dir[k] * dir[k];
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-12);
  for (int k = 0; k < dim; ++k) dir[k] /= norm;
  return dir;
}

std::vector<double> edge_force(const WeightedEmbedding& e, const LossSpec& spec, NodeId u,
                               NodeId v) {
  check_spec(spec);
  if (spec.family != LossFamily::Linear)
    throw ConfigError("forces are implemented for the linear family only");
  std::vector<double> f(e.dim, 0.0);
  const double norm = euclidean_distance(e, u, v);
  const double wnf = weight_norm_factor(e, u, v);
  if (norm / wnf > spec.threshold) {
    const double scale = 1.0 / (norm * wnf);
    const auto pu = e.position(u);
    const auto pv = e.position(v);
    for (int k = 0; k < e.dim; ++k) f[k] = (pv[k] - pu[k]) * scale;
  }
  return f;
}

std::vector<double> nonedge_force(const WeightedEmbedding& e, const LossSpec& spec, NodeId u,
                                  NodeId v, std::uint64_t iteration) {
  check_spec(spec);
  if (spec.family != LossFamily::Linear)
    throw ConfigError("forces are implemented for the linear family only");
  std::vector<double> f(e.dim, 0.0);
  const double norm = euclidean_distance(e, u, v);
  const double wnf = weight_norm_factor(e, u, v);
  if (norm == 0.0) {
    auto dir = coincident_direction(e.dim, std::min(u, v), std::max(u, v), iteration);
    const double scale = (u < v ? 1.0 : -1.0) / wnf;
    for (int k = 0; k < e.dim; ++k) f[k] = dir[k] * scale;
  } else if (norm / wnf < spec.threshold) {
    const double scale = 1.0 / (norm * wnf);
    const auto pu = e.position(u);
    const auto pv = e.position(v);
    for (int k = 0; k < e.dim; ++k) f[k] = (pu[k] - pv[k]) * scale;
  }
  return f;
}

double total_loss_allpairs(const Graph& g, const WeightedEmbedding& e, const LossSpec& spec) {
  check_spec(spec);
  const std::size_t n = g.node_count();
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const LossTerms terms = loss_terms(spec, weighted_distance(e, u, v));
      total += g.has_edge(u, v) ? terms.attr : terms.rep;
    }
  }
  return total;
}

}  // namespace wembed

#include "wembed/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "wembed/rng.hpp"

namespace wembed {

void OptimizerConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (latent_dim < 1) throw ConfigError("latent dim must be >= 1");
  if (!(threshold > 0.0)) throw ConfigError("threshold must be > 0");
  if (!(lr0 > 0.0)) throw ConfigError("lr0 must be > 0");
  if (!(lr_decay > 0.0) || lr_decay > 1.0) throw ConfigError("lr-decay must be in (0, 1]");
  if (max_iters < 1) throw ConfigError("max-iters must be >= 1");
  if (!(resolved_stop_eps() > 0.0)) throw ConfigError("stop-eps must be > 0");
  if (leaf_capacity < 2) throw ConfigError("leaf capacity must be >= 2");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

namespace {

// Gradient row of one node: attraction over its adjacency, repulsion over the
// exactly filtered forest candidates. Summation order is fixed (neighbors in
// adjacency order, then candidates in tree emission order), which makes
// parallel runs bit-identical to serial ones.
void node_gradient(const Graph& g, const WeightedEmbedding& e, const WeightClassForest& forest,
                   double ell, std::uint64_t iteration, NodeId u, double* row,
                   std::vector<NodeId>& scratch, GradientStats& stats) {
  const int dim = e.dim;
  const auto pu = e.position(u);

  for (NodeId v : g.neighbors(u)) {
    const double norm = euclidean_distance(e, u, v);
    const double wnf = weight_norm_factor(e, u, v);
    if (norm / wnf > ell) {
      const double scale = 1.0 / (norm * wnf);
      const auto pv = e.position(v);
      for (int k = 0; k < dim; ++k) row[k] += (pu[k] - pv[k]) * scale;
      ++stats.attraction_terms;
    }
  }

  forest.query_candidates(e, u, ell, scratch);
  for (NodeId v : scratch) {
    if (g.has_edge(u, v)) continue;
    const double norm = euclidean_distance(e, u, v);
    const double wnf = weight_norm_factor(e, u, v);
    if (norm == 0.0) {
      const auto dir = coincident_direction(dim, std::min(u, v), std::max(u, v), iteration);
      const double scale = (u < v ? 1.0 : -1.0) / wnf;
      for (int k = 0; k < dim; ++k) row[k] -= dir[k] * scale;
      ++stats.repulsion_terms;
    } else if (norm / wnf < ell) {
      const double scale = 1.0 / (norm * wnf);
      const auto pv = e.position(v);
      for (int k = 0; k < dim; ++k) row[k] += (pv[k] - pu[k]) * scale;
      ++stats.repulsion_terms;
    }
  }
}

}  // namespace

std::vector<double> compute_gradient(const Graph& g, const WeightedEmbedding& e,
                                     const WeightClassForest& forest, const LossSpec& spec,
                                     std::uint64_t iteration, int threads, GradientStats* stats) {
  if (spec.family != LossFamily::Linear)
    throw ConfigError("gradients are implemented for the linear family only");
  if (g.node_count() != e.node_count())
    throw ConfigError("graph and embedding node counts disagree");

  const std::size_t n = g.node_count();
  const double ell = spec.threshold;
  std::vector<double> grad(n * static_cast<std::size_t>(e.dim), 0.0);

  auto run_range = [&](NodeId lo, NodeId hi, GradientStats& local) {
    std::vector<NodeId> scratch;
    for (NodeId u = lo; u < hi; ++u)
      node_gradient(g, e, forest, ell, iteration, u, grad.data() + std::size_t(u) * e.dim,
                    scratch, local);
  };

  GradientStats total;
  if (threads <= 1 || n < 2 * static_cast<std::size_t>(threads)) {
    run_range(0, static_cast<NodeId>(n), total);
  } else {
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<GradientStats> locals(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const NodeId lo = static_cast<NodeId>(std::min(n, t * chunk));
      const NodeId hi = static_cast<NodeId>(std::min(n, (t + 1) * chunk));
      if (lo < hi) pool.emplace_back(run_range, lo, hi, std::ref(locals[t]));
    }
    for (auto& th : pool) th.join();
    for (const auto& l : locals) {
      total.attraction_terms += l.attraction_terms;
      total.repulsion_terms += l.repulsion_terms;
    }
  }
  if (stats) *stats = total;
  return grad;
}

double adam_step(AdamState& state, const OptimizerConfig& cfg, std::span<double> positions,
                 std::span<const double> gradient) {
  if (positions.size() != gradient.size() || positions.size() != state.first_moment.size())
    throw ConfigError("adam buffers disagree in size");
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    if (!std::isfinite(gradient[i]))
      throw NumericError("non-finite gradient at node " + std::to_string(i / cfg.dim));
  }

  state.step += 1;
  const double lr = cfg.lr0 * std::pow(cfg.lr_decay, static_cast<double>(state.step - 1));
  const double bias1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(state.step));

  const std::size_t n = positions.size() / cfg.dim;
  double displacement_sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double move_sq = 0.0;
    for (int k = 0; k < cfg.dim; ++k) {
      const std::size_t i = v * cfg.dim + k;
      const double gi = gradient[i];
      double& m = state.first_moment[i];
      double& s = state.second_moment[i];
      m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * gi;
      s = cfg.adam_beta2 * s + (1.0 - cfg.adam_beta2) * gi * gi;
      const double step = lr * (m / bias1) / (std::sqrt(s / bias2) + cfg.adam_eps);
      positions[i] -= step;
      move_sq += step * step;
    }
    displacement_sum += std::sqrt(move_sq);
  }
  return displacement_sum / static_cast<double>(n);
}

double total_loss_indexed(const Graph& g, const WeightedEmbedding& e,
                          const WeightClassForest& forest, const LossSpec& spec) {
  if (spec.family != LossFamily::Linear)
    throw ConfigError("the index-accelerated loss requires the linear family");
  const double ell = spec.threshold;
  double total = 0.0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    total += std::max(weighted_distance(e, u, v) - ell, 0.0);
  });
  // The linear repelling term vanishes beyond ell, so the candidate superset
  // covers every nonzero term; count each pair from its smaller endpoint.
  std::vector<NodeId> scratch;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    forest.query_candidates(e, u, ell, scratch);
    for (NodeId v : scratch) {
      if (v < u || g.has_edge(u, v)) continue;
      const double x = weighted_distance(e, u, v);
      if (x < ell) total += ell - x;
    }
  }
  return total;
}

EmbedResult embed(const Graph& g, const OptimizerConfig& cfg, const IterationCallback& callback) {
  cfg.validate();
  const std::size_t n = g.node_count();
  if (n == 0) throw ConfigError("cannot embed an empty graph");

  WeightedEmbedding e;
  e.dim = cfg.dim;
  e.weights = cfg.uniform_weights ? uniform_weights(n) : assign_weights(g, cfg.dim, cfg.latent_dim);
  e.positions = init_positions(n, cfg.dim, cfg.seed);

  const LossSpec spec{LossFamily::Linear, cfg.threshold};
  const double stop_eps = cfg.resolved_stop_eps();
  AdamState state(e.positions.size());

  int iterations = 0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const WeightClassForest forest(e, cfg.leaf_capacity);
    const auto grad = compute_gradient(g, e, forest, spec, static_cast<std::uint64_t>(iter),
                                       cfg.threads);
    const double displacement = adam_step(state, cfg, e.positions, grad);
    iterations = iter + 1;
    if (callback) callback(iter, e, displacement);
    if (displacement < stop_eps) break;
  }

  const WeightClassForest forest(e, cfg.leaf_capacity);
  const double final_loss = total_loss_indexed(g, e, forest, spec);
  return {std::move(e), iterations, final_loss};
}

}  // namespace wembed

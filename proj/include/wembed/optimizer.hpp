#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wembed/embedding.hpp"
#include "wembed/graph.hpp"
#include "wembed/loss.hpp"
#include "wembed/spatial.hpp"

namespace wembed {

struct OptimizerConfig {
  int dim = 8;
  int latent_dim = 8;        // exponent correction d' in w_v = deg(v)^(d/d')
  double threshold = 1.0;    // l of the linear loss; the scale is arbitrary
  double lr0 = 0.1;
  double lr_decay = 0.995;   // per-iteration multiplicative factor
  int max_iters = 1000;
  std::optional<double> stop_eps;  // mean displacement tolerance; default 1e-4 * threshold
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 1;
  bool uniform_weights = false;  // w_v = 1, the Euclidean baseline
  int leaf_capacity = 16;
  int threads = 1;

  double resolved_stop_eps() const { return stop_eps ? *stop_eps : 1e-4 * threshold; }
  void validate() const;  // throws ConfigError
};

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;  // completed steps

  explicit AdamState(std::size_t size) : first_moment(size, 0.0), second_moment(size, 0.0) {}
};

struct GradientStats {
  std::size_t attraction_terms = 0;
  std::size_t repulsion_terms = 0;  // one per filtered candidate; never a sample
};

// Exact full-batch gradient of the linear loss with respect to every
// position, per-node flat layout matching the embedding. Attraction runs over
// the adjacency; repulsion runs over the forest candidates filtered exactly
// to non-neighbors with dist < l, so no negative sampling happens anywhere.
// The forest must be built from the current positions. Per-node rows are
// independent; `threads` > 1 maps them over a thread pool with identical
// per-row summation order, so results are bit-identical to a serial run.
std::vector<double> compute_gradient(const Graph& g, const WeightedEmbedding& e,
                                     const WeightClassForest& forest, const LossSpec& spec,
                                     std::uint64_t iteration = 0, int threads = 1,
                                     GradientStats* stats = nullptr);

// One Adam update with bias correction at step size lr0 * lr_decay^t
// (t = completed steps before this one). Mutates positions and state, returns
// the mean per-node Euclidean displacement. Throws NumericError on a
// non-finite gradient entry, naming the node.
double adam_step(AdamState& state, const OptimizerConfig& cfg, std::span<double> positions,
                 std::span<const double> gradient);

// Total linear loss via the forest: attracting terms over edges, repelling
// terms over candidates filtered to dist < l. Equals the all-pairs sum
// because the linear repelling term vanishes beyond l.
double total_loss_indexed(const Graph& g, const WeightedEmbedding& e,
                          const WeightClassForest& forest, const LossSpec& spec);

struct EmbedResult {
  WeightedEmbedding embedding;
  int iterations = 0;
  double final_loss = 0.0;
};

// Called after every optimizer step with (iteration, embedding, mean displacement).
using IterationCallback = std::function<void(int, const WeightedEmbedding&, double)>;

// The full pipeline: fix weights from degrees (or uniform), initialize
// positions from the seed, then iterate {rebuild forest, exact gradient,
// Adam step} until the mean displacement drops below stop_eps or max_iters is
// reached. Deterministic: (graph, config) fixes the result exactly.
// Disconnected input is allowed (components drift apart).
EmbedResult embed(const Graph& g, const OptimizerConfig& cfg,
                  const IterationCallback& callback = {});

}  // namespace wembed

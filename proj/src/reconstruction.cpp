#include "wembed/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "wembed/format.hpp"
#include "wembed/rng.hpp"

namespace wembed {

namespace {

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

void check_inputs(const Graph& g, const WeightedEmbedding& e) {
  if (g.node_count() != e.node_count())
    throw ConfigError("graph and embedding node counts disagree");
  if (g.edge_count() == 0) throw ConfigError("recall undefined: graph has no edges");
}

struct Candidate {
  double dist;
  bool is_edge;
};

// Sweep thresholds in ascending distance order. F1 is piecewise constant
// between realized distances, so evaluating after each tie group of equal
// distances finds the true maximum; strict improvement keeps the smallest
// maximizing threshold. `fp_scale` rescales the non-edge count (1 for the
// exact sweep).
ReconstructionReport sweep(std::vector<Candidate>& candidates, std::size_t edge_count,
                           double fp_scale) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });
  const double m = static_cast<double>(edge_count);
  ReconstructionReport best;
  best.f1 = -1.0;
  std::size_t true_pos = 0;
  std::size_t false_pos = 0;
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i;
    for (; j < candidates.size() && candidates[j].dist == candidates[i].dist; ++j) {
      if (candidates[j].is_edge)
        ++true_pos;
      else
        ++false_pos;
    }
    const double predicted = static_cast<double>(true_pos) + fp_scale * static_cast<double>(false_pos);
    const double precision = predicted > 0.0 ? static_cast<double>(true_pos) / predicted : 1.0;
    const double recall = static_cast<double>(true_pos) / m;
    const double f1 = f1_score(precision, recall);
    if (f1 > best.f1) {
      best.f1 = f1;
      best.best_threshold = candidates[i].dist;
      best.precision = precision;
      best.recall = recall;
    }
    i = j;
  }
  return best;
}

}  // namespace

std::pair<double, double> precision_recall(const Graph& g, const WeightedEmbedding& e, double t) {
  check_inputs(g, e);
  if (!(t > 0.0)) throw ConfigError("threshold must be > 0");
  const std::size_t n = g.node_count();
  std::size_t predicted = 0;
  std::size_t true_pos = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (weighted_distance(e, u, v) <= t) {
        ++predicted;
        if (g.has_edge(u, v)) ++true_pos;
      }
    }
  }
  const double precision =
      predicted > 0 ? static_cast<double>(true_pos) / static_cast<double>(predicted) : 1.0;
  const double recall = static_cast<double>(true_pos) / static_cast<double>(g.edge_count());
  return {precision, recall};
}

ReconstructionReport best_f1_exact(const Graph& g, const WeightedEmbedding& e) {
  check_inputs(g, e);
  const std::size_t n = g.node_count();
  std::vector<Candidate> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      candidates.push_back({weighted_distance(e, u, v), g.has_edge(u, v)});
  ReconstructionReport report = sweep(candidates, g.edge_count(), 1.0);
  report.sampled.reset();
  return report;
}

ReconstructionReport best_f1_sampled(const Graph& g, const WeightedEmbedding& e,
                                     int sample_factor, std::uint64_t seed) {
  check_inputs(g, e);
  if (sample_factor < 1) throw ConfigError("sample factor must be >= 1");
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  const std::size_t all_pairs = n * (n - 1) / 2;
  const std::size_t non_edges = all_pairs - m;
  const std::size_t want = static_cast<std::size_t>(sample_factor) * m;
  if (want > non_edges) return best_f1_exact(g, e);

  std::vector<Candidate> candidates;
  candidates.reserve(m + want);
  g.for_each_edge([&](NodeId u, NodeId v) {
    candidates.push_back({weighted_distance(e, u, v), true});
  });

  std::mt19937_64 rng(mix64(seed));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(want * 2);
  std::size_t tries = 0;
  while (seen.size() < want) {
    if (++tries > 100'000'000ULL)
      throw NumericError("non-edge sampling failed to make progress");
    const auto u = static_cast<NodeId>(uniform_below(rng, n));
    const auto v = static_cast<NodeId>(uniform_below(rng, n));
    if (u == v || g.has_edge(u, v)) continue;
    const std::uint64_t key =
        static_cast<std::uint64_t>(std::min(u, v)) * n + static_cast<std::uint64_t>(std::max(u, v));
    if (!seen.insert(key).second) continue;
    candidates.push_back({weighted_distance(e, std::min(u, v), std::max(u, v)), false});
  }

  const double fp_scale = static_cast<double>(non_edges) / static_cast<double>(want);
  ReconstructionReport report = sweep(candidates, m, fp_scale);
  report.sampled = SampledMode{sample_factor, seed};
  return report;
}

std::string format_report(const ReconstructionReport& r) {
  std::string line = "f1=" + format_double(r.f1) + " t=" + format_double(r.best_threshold) +
                     " prec=" + format_double(r.precision) + " rec=" + format_double(r.recall) +
                     " mode=";
  if (r.sampled)
    line += "sampled:" + std::to_string(r.sampled->sample_factor) + ":" +
            std::to_string(r.sampled->seed);
  else
    line += "exact";
  return line;
}

}  // namespace wembed

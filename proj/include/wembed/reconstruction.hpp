#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "wembed/embedding.hpp"
#include "wembed/graph.hpp"

namespace wembed {

struct SampledMode {
  int sample_factor = 10;
  std::uint64_t seed = 1;
};

struct ReconstructionReport {
  double f1 = 0.0;
  double best_threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::optional<SampledMode> sampled;  // nullopt = exact

  bool exact() const { return !sampled.has_value(); }
};

// Precision and recall of the predicted edge set E(t) = {pairs with weighted
// distance <= t} against the actual edges. Precision of an empty prediction
// set is vacuously 1. Throws ConfigError when the graph has no edges (recall
// undefined).
std::pair<double, double> precision_recall(const Graph& g, const WeightedEmbedding& e, double t);

// Best F1 over all thresholds, computed exactly: all pairwise distances are
// sorted and F1 is evaluated at every distinct value (ties at the threshold
// count as predicted). F1 ties break towards the smaller threshold.
// Quadratic time and memory; desk scale only.
ReconstructionReport best_f1_exact(const Graph& g, const WeightedEmbedding& e);

// Sampled approximation: candidates are all m edges plus sample_factor * m
// distinct uniformly sampled non-edges; the non-edge count in the precision
// denominator is rescaled by (#non-edges / sample size), making the result an
// estimator of the exact score. Falls back to exact mode when the requested
// sample exceeds the available non-edges. Deterministic given the seed.
ReconstructionReport best_f1_sampled(const Graph& g, const WeightedEmbedding& e,
                                     int sample_factor = 10, std::uint64_t seed = 1);

// Machine-readable single line:
//   f1=<v> t=<v> prec=<v> rec=<v> mode=<exact|sampled:<factor>:<seed>>
std::string format_report(const ReconstructionReport& r);

}  // namespace wembed

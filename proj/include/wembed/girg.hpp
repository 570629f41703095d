#pragma once

#include <cstdint>
#include <span>

#include "wembed/graph.hpp"

namespace wembed {

// Geometric inhomogeneous random graph: latent Pareto weights with tail
// controlled by beta (heterogeneity grows as beta approaches 2), positions
// uniform on the d-dimensional unit torus, connection probability driven by
// (w_u w_v / W) / dist^d sharpened by the temperature. The constant in the
// connection probability is calibrated so the expected average degree matches
// the target. All pairs are evaluated, so this is quadratic-time and meant
// for desk-scale instances.
struct GirgConfig {
  std::size_t n = 0;
  double target_avg_deg = 15.0;
  double beta = 2.5;         // power-law exponent, > 2
  int dim = 4;               // latent dimension
  double temperature = 0.1;  // in [0, 1); 0 = hard threshold rule
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

// Deterministic given the config. Isolated nodes are possible; reduce to the
// largest connected component before embedding. Throws NumericError when the
// degree calibration cannot reach the target (e.g. target >= n - 1).
Graph sample_girg(const GirgConfig& cfg);

// L2 distance on the unit torus: per axis min(|a-b|, 1-|a-b|). A metric,
// bounded by sqrt(d)/2.
double torus_distance(std::span<const double> a, std::span<const double> b);

}  // namespace wembed

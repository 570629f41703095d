#include "wembed/girg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wembed/rng.hpp"

namespace wembed {

void GirgConfig::validate() const {
  if (n < 2) throw ConfigError("girg: n must be >= 2");
  if (!(target_avg_deg > 0.0)) throw ConfigError("girg: target average degree must be > 0");
  if (!(beta > 2.0)) throw ConfigError("girg: beta must be > 2");
  if (dim < 1) throw ConfigError("girg: dimension must be >= 1");
  if (!(temperature >= 0.0) || temperature >= 1.0)
    throw ConfigError("girg: temperature must be in [0, 1)");
}

double torus_distance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = std::fabs(a[k] - b[k]);
    d = std::min(d, 1.0 - d);
    sq += d * d;
  }
  return std::sqrt(sq);
}

namespace {

// Uniform draw in [0,1) derived from (seed, u, v); independent of the order
// in which pairs are evaluated.
double pair_uniform(std::uint64_t seed, NodeId u, NodeId v) {
  return static_cast<double>(mix64(hash_combine(hash_combine(seed, u), v)) >> 11) * 0x1.0p-53;
}

}  // namespace

Graph sample_girg(const GirgConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const int dim = cfg.dim;
  const double T = cfg.temperature;

  std::mt19937_64 rng(mix64(cfg.seed));
  std::vector<double> weights(n);
  for (double& w : weights) w = std::pow(1.0 - unit_double(rng), -1.0 / (cfg.beta - 1.0));
  std::vector<double> pos(n * static_cast<std::size_t>(dim));
  for (double& c : pos) c = unit_double(rng);

  double total_weight = 0.0;
  for (double w : weights) total_weight += w;
  const double log_total = std::log(total_weight);

  // Per-pair kernel exponent, so that the connection probability is
  //   p_uv = min(1, exp(log_c + base_uv))            for T > 0
  //   connect iff base_uv <= log_c                   for T = 0
  // in log space; working with logarithms keeps the 1/T powers finite.
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> base(pairs);
  {
    std::size_t idx = 0;
    std::vector<double> logw(n);
    for (std::size_t i = 0; i < n; ++i) logw[i] = std::log(weights[i]);
    for (NodeId u = 0; u < n; ++u) {
      const std::span<const double> xu{pos.data() + std::size_t(u) * dim, std::size_t(dim)};
      for (NodeId v = u + 1; v < n; ++v) {
        const std::span<const double> xv{pos.data() + std::size_t(v) * dim, std::size_t(dim)};
        const double logdist = std::log(torus_distance(xu, xv));  // -inf for coincident points
        if (T > 0.0)
          base[idx++] = (logw[u] + logw[v] - log_total) / T - (dim / T) * logdist;
        else
          base[idx++] = dim * logdist - (logw[u] + logw[v] - log_total);
      }
    }
  }

  // Expected average degree as a function of log_c, nondecreasing in log_c.
  std::vector<double> sorted = base;
  std::sort(sorted.begin(), sorted.end());
  auto expected_avg_deg = [&](double log_c) -> double {
    if (T == 0.0) {
      const auto count = std::upper_bound(sorted.begin(), sorted.end(), log_c) - sorted.begin();
      return 2.0 * static_cast<double>(count) / static_cast<double>(n);
    }
    // Pairs with base >= -log_c are saturated at probability 1; the rest
    // contribute exp(log_c + base), summed largest-first so the scan can stop
    // once the remainder is negligible.
    const auto first_unsat =
        std::lower_bound(sorted.begin(), sorted.end(), -log_c) - sorted.begin();
    double sum = static_cast<double>(sorted.end() - (sorted.begin() + first_unsat));
    for (std::size_t i = first_unsat; i-- > 0;) {
      const double p = std::exp(log_c + sorted[i]);
      sum += p;
      if (p * static_cast<double>(i + 1) < 1e-12) break;
    }
    return 2.0 * sum / static_cast<double>(n);
  };

  // Bracket log_c, then bisect.
  double lo = 0.0, hi = 0.0;
  const double target = cfg.target_avg_deg;
  if (expected_avg_deg(0.0) < target) {
    while (expected_avg_deg(hi) < target) {
      hi += 16.0;
      if (hi > 1e5)
        throw NumericError("girg: cannot reach the target average degree; lower --avg-deg or raise --n");
    }
  } else {
    while (expected_avg_deg(lo) >= target) {
      lo -= 16.0;
      if (lo < -1e5)
        throw NumericError("girg: calibration failed to bracket; adjust the parameters");
    }
  }
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (expected_avg_deg(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double log_c = hi;
  const double achieved = expected_avg_deg(log_c);
  if (std::fabs(achieved - target) > 0.05 * target)
    throw NumericError("girg: calibration reached average degree " + std::to_string(achieved) +
                       " instead of " + std::to_string(target) + "; adjust the parameters");

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(target * n / 2 * 1.2) + 16);
  std::size_t idx = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v, ++idx) {
      bool connect;
      if (T == 0.0) {
        connect = base[idx] <= log_c;
      } else {
        const double log_p = std::min(0.0, log_c + base[idx]);
        connect = std::log(pair_uniform(cfg.seed, u, v)) < log_p;
      }
      if (connect) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace wembed

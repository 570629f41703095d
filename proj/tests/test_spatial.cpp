#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "test_util.hpp"
#include "wembed/spatial.hpp"

using namespace wembed;

TEST_CASE("weight class index convention") {
  CHECK(weight_class_of(1.0) == 1);    // 2^0 <= 1 < 2^1
  CHECK(weight_class_of(1.999) == 1);
  CHECK(weight_class_of(2.0) == 2);
  CHECK(weight_class_of(3.0) == 2);
  CHECK(weight_class_of(7.9) == 3);    // 4 <= 7.9 < 8
  CHECK(weight_class_of(8.0) == 4);    // 8 <= 8 < 16
  CHECK(weight_class_of(0.75) == 0);   // 1/2 <= w < 1
  CHECK_THROWS_AS(weight_class_of(0.0), ConfigError);
}

TEST_CASE("forest: uniform weights give a single class over all nodes") {
  auto e = test::random_embedding(50, 2, 1.0, 1.0, 1);
  e.weights = uniform_weights(50);
  const WeightClassForest forest(e);
  REQUIRE(forest.classes().size() == 1);
  CHECK(forest.classes()[0].index == 1);
  CHECK(forest.classes()[0].members.size() == 50);
}

TEST_CASE("forest: boundary weights land in the right classes") {
  WeightedEmbedding e;
  e.dim = 2;
  e.positions = {0, 0, 1, 0, 2, 0, 3, 0};
  e.weights = {1.0, 3.0, 7.9, 8.0};
  const WeightClassForest forest(e);
  REQUIRE(forest.classes().size() == 4);
  CHECK(forest.classes()[0].index == 1);
  CHECK(forest.classes()[0].members == std::vector<NodeId>{0});
  CHECK(forest.classes()[1].index == 2);
  CHECK(forest.classes()[1].members == std::vector<NodeId>{1});
  CHECK(forest.classes()[2].index == 3);
  CHECK(forest.classes()[2].members == std::vector<NodeId>{2});
  CHECK(forest.classes()[3].index == 4);
  CHECK(forest.classes()[3].members == std::vector<NodeId>{3});
}

TEST_CASE("forest: every node appears in exactly one class, matching its weight") {
  const auto e = test::random_embedding(200, 3, 1.0, 64.0, 2);
  const WeightClassForest forest(e);
  std::set<NodeId> seen;
  for (const auto& wc : forest.classes()) {
    CHECK(!wc.members.empty());
    for (NodeId v : wc.members) {
      CHECK(seen.insert(v).second);
      CHECK(std::exp2(wc.index - 1) <= e.weights[v]);
      CHECK(e.weights[v] < std::exp2(wc.index));
    }
  }
  CHECK(seen.size() == 200);
}

TEST_CASE("rtree: ball query equals a linear scan of the class") {
  for (int dim : {1, 2, 4, 8}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const std::size_t n = 137 + 100 * seed;
      auto e = test::random_embedding(n, dim, 1.0, 1.0, seed * 31 + dim);
      std::vector<std::uint32_t> ids(n);
      for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::uint32_t>(i);
      const RTree tree(dim, e.positions, ids, 16);

      std::mt19937_64 rng(seed);
      for (int q = 0; q < 25; ++q) {
        const std::size_t c = uniform_below(rng, n);
        const double* center = e.positions.data() + c * dim;
        const double radius = 0.05 + 0.5 * unit_double(rng);

        std::vector<std::uint32_t> got;
        tree.query_ball(center, radius, got);
        std::vector<std::uint32_t> want;
        for (std::size_t i = 0; i < n; ++i)
          if (squared_euclidean(e.positions.data() + i * dim, center, dim) <= radius * radius)
            want.push_back(static_cast<std::uint32_t>(i));

        std::sort(got.begin(), got.end());
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("rtree: empty and single-point trees") {
  const double origin[2] = {0.0, 0.0};
  RTree empty(2, {}, {}, 16);
  std::vector<std::uint32_t> out;
  empty.query_ball(origin, 10.0, out);
  CHECK(out.empty());

  RTree one(2, {0.5, 0.5}, {7}, 16);
  one.query_ball(origin, 1.0, out);
  CHECK(out == std::vector<std::uint32_t>{7});
  out.clear();
  one.query_ball(origin, 0.1, out);
  CHECK(out.empty());
}

TEST_CASE("query radius: uniform weights, d=2, l=1 returns the sqrt(2) ball") {
  // r_1 = l * (w_u * 2^1)^(1/2) = sqrt(2); nodes on a line at x = 0.5k
  WeightedEmbedding e;
  e.dim = 2;
  const std::size_t n = 10;
  e.weights = uniform_weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.positions.push_back(0.5 * static_cast<double>(i));
    e.positions.push_back(0.0);
  }
  const WeightClassForest forest(e);
  std::vector<NodeId> out;
  forest.query_candidates(e, 0, 1.0, out);
  std::sort(out.begin(), out.end());
  // Euclidean distance <= sqrt(2) ~ 1.414: nodes 1 (0.5) and 2 (1.0)
  CHECK(out == std::vector<NodeId>{1, 2});
}

TEST_CASE("query_candidates: superset of the l-ball, false positives bounded") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int dim = (seed % 2 == 0) ? 2 : 4;
    const std::size_t n = 300;
    const auto e = test::random_embedding(n, dim, 1.5, 32.0, seed);
    const WeightClassForest forest(e);
    const double ell = 1.0;
    const double bound = std::exp2(1.0 / dim) * ell * (1.0 + 1e-9);

    std::vector<NodeId> out;
    for (NodeId u = 0; u < n; ++u) {
      forest.query_candidates(e, u, ell, out);
      const std::set<NodeId> got(out.begin(), out.end());
      CHECK(got.size() == out.size());  // no duplicates
      CHECK(got.count(u) == 0);
      for (NodeId v = 0; v < n; ++v) {
        if (v == u) continue;
        if (weighted_distance(e, u, v) <= ell) CHECK(got.count(v) == 1);
      }
      for (NodeId v : out) CHECK(weighted_distance(e, u, v) <= bound);
    }
  }
}

TEST_CASE("query_candidates: node at weighted distance exactly l is returned") {
  WeightedEmbedding e;
  e.dim = 2;
  // weights 4 and 4: (w_u w_v)^(1/2) = 4, so Euclidean 4 means weighted 1
  e.positions = {0, 0, 4, 0};
  e.weights = {4.0, 4.0};
  REQUIRE(weighted_distance(e, 0, 1) == 1.0);
  const WeightClassForest forest(e);
  std::vector<NodeId> out;
  forest.query_candidates(e, 0, 1.0, out);
  CHECK(out == std::vector<NodeId>{1});
}

TEST_CASE("query_candidates: node at weighted distance 3l is never returned") {
  WeightedEmbedding e;
  e.dim = 2;
  e.positions = {0, 0, 12, 0};
  e.weights = {4.0, 4.0};
  REQUIRE(weighted_distance(e, 0, 1) == 3.0);
  const WeightClassForest forest(e);
  std::vector<NodeId> out;
  forest.query_candidates(e, 0, 1.0, out);
  CHECK(out.empty());
}

TEST_CASE("query_candidates: deterministic across rebuilds") {
  const auto e = test::random_embedding(150, 3, 1.0, 16.0, 9);
  const WeightClassForest a(e);
  const WeightClassForest b(e);
  std::vector<NodeId> out_a, out_b;
  for (NodeId u = 0; u < 150; ++u) {
    a.query_candidates(e, u, 1.0, out_a);
    b.query_candidates(e, u, 1.0, out_b);
    CHECK(out_a == out_b);
  }
}

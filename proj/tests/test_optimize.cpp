#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "distmod/optimize.hpp"
#include "test_support.hpp"

using distmod::Algorithm;
using distmod::AttributeTable;
using distmod::DistanceKind;
using distmod::DistanceSpec;
using distmod::Graph;
using distmod::KernelKind;
using distmod::NgModel;
using distmod::NullModel;
using distmod::OptimizerConfig;
using distmod::PairDistances;
using distmod::Partition;

namespace {

OptimizerConfig cfg_for(Algorithm a, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.algorithm = a;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("exhaustive search agrees with hand results") {
  // Single edge: together scores 0, split scores -1/2.
  const Graph pair = Graph::from_edges({{0, 1, 1.0}});
  const NgModel m_pair(pair);
  const auto [p_pair, q_pair] = distmod::exhaustive_best_partition(pair, m_pair);
  CHECK(q_pair == doctest::Approx(0.0));
  CHECK(p_pair.label(0) == p_pair.label(1));

  const Graph tri2 = Graph::from_edges(
      {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}});
  const NgModel m_tri(tri2);
  const auto [p_tri, q_tri] = distmod::exhaustive_best_partition(tri2, m_tri);
  CHECK(q_tri == doctest::Approx(0.5));
  CHECK(p_tri.label(0) == p_tri.label(1));
  CHECK(p_tri.label(1) == p_tri.label(2));
  CHECK(p_tri.label(3) == p_tri.label(4));
  CHECK(p_tri.label(4) == p_tri.label(5));
  CHECK(p_tri.label(0) != p_tri.label(3));
}

TEST_CASE("both algorithms reach the exhaustive optimum on small graphs") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const int n = 9;
    const Graph g = testsup::random_graph(n, 0.35, seed);
    const AttributeTable t = testsup::random_coords(n, seed + 40);
    const PairDistances d(DistanceSpec{DistanceKind::euclidean, {"x", "y"}}, t);

    std::vector<std::unique_ptr<NullModel>> models;
    models.push_back(std::make_unique<NgModel>(g));
    models.push_back(distmod::build_dist_model(
        g, d, distmod::make_kernel(KernelKind::gaussian, 0.8 * d.mean())));
    models.push_back(distmod::build_spa_model(g, d, 0.4 * d.mean()));

    for (const auto& model : models) {
      const auto [best_p, best_q] = distmod::exhaustive_best_partition(g, *model);
      for (const Algorithm a : {Algorithm::lpam_plus, Algorithm::louvain}) {
        const auto res = distmod::optimize(g, *model, cfg_for(a, seed));
        CHECK(res.q == doctest::Approx(distmod::modularity(g, *model, res.partition))
                           .epsilon(1e-10));
        // Heuristics may fall short, but never by much on graphs this small.
        CHECK(res.q >= best_q - 1e-9 - 0.01 * std::abs(best_q));
        CHECK(res.q <= best_q + 1e-9);
      }
    }
  }
}

TEST_CASE("two cliques joined by a bridge resolve immediately") {
  std::vector<distmod::RawEdge> edges;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) {
      edges.push_back({a, b, 1.0});
      edges.push_back({a + 5, b + 5, 1.0});
    }
  edges.push_back({4, 5, 1.0});
  const Graph g = Graph::from_edges(edges);
  const NgModel m(g);
  for (const Algorithm a : {Algorithm::lpam_plus, Algorithm::louvain}) {
    const auto res = distmod::optimize(g, m, cfg_for(a, 7));
    REQUIRE(res.partition.community_count() == 2);
    for (int i = 1; i < 5; ++i)
      CHECK(res.partition.label(i) == res.partition.label(0));
    for (int i = 6; i < 10; ++i)
      CHECK(res.partition.label(i) == res.partition.label(5));
    CHECK(res.sweeps <= 4);
  }
}

TEST_CASE("runs are deterministic in the seed") {
  const Graph g = testsup::random_graph(60, 0.1, 77);
  const NgModel m(g);
  for (const Algorithm a : {Algorithm::lpam_plus, Algorithm::louvain}) {
    const auto r1 = distmod::optimize(g, m, cfg_for(a, 123));
    const auto r2 = distmod::optimize(g, m, cfg_for(a, 123));
    CHECK(r1.q == r2.q);
    CHECK(r1.partition.labels() == r2.partition.labels());
    const auto r3 = distmod::optimize(g, m, cfg_for(a, 124));
    CHECK(distmod::modularity(g, m, r3.partition) == doctest::Approx(r3.q));
  }
}

TEST_CASE("reported score always matches a from-scratch evaluation") {
  for (std::uint64_t seed = 91; seed <= 93; ++seed) {
    const int n = 40;
    const Graph g = testsup::random_graph(n, 0.15, seed);
    const AttributeTable t = testsup::random_coords(n, seed + 5);
    const PairDistances d(DistanceSpec{DistanceKind::euclidean, {"x", "y"}}, t);
    const auto model = distmod::build_dist_model(
        g, d, distmod::make_kernel(KernelKind::reciprocal, 0.5 * d.mean()));
    for (const Algorithm a : {Algorithm::lpam_plus, Algorithm::louvain}) {
      const auto res = distmod::optimize(g, *model, cfg_for(a, seed));
      CHECK(res.q ==
            doctest::Approx(distmod::modularity(g, *model, res.partition))
                .epsilon(1e-10));
      // Only positive gains are ever applied, so the start is a floor.
      const double floor_q =
          distmod::modularity(g, *model, Partition::singletons(g));
      CHECK(res.q >= floor_q - 1e-12);
      CHECK(res.sweeps <= 100);
    }
  }
}

TEST_CASE("louvain matches lpam quality on a planted two-block graph") {
  std::vector<distmod::RawEdge> edges;
  std::mt19937_64 gen(4242);
  const int half = 25;
  for (int i = 0; i < 2 * half; ++i)
    for (int j = i + 1; j < 2 * half; ++j) {
      const bool same = (i < half) == (j < half);
      const double p = same ? 0.5 : 0.03;
      if (distmod::rng::uniform01(gen) < p) edges.push_back({i, j, 1.0});
    }
  const Graph g = Graph::from_edges(edges, 2 * half);
  const NgModel m(g);
  const auto r_lpam = distmod::optimize(g, m, cfg_for(Algorithm::lpam_plus, 5));
  const auto r_louv = distmod::optimize(g, m, cfg_for(Algorithm::louvain, 5));
  CHECK(std::abs(r_lpam.q - r_louv.q) < 0.05);
  CHECK(r_lpam.q > 0.3);
  CHECK(r_louv.q > 0.3);
}

TEST_CASE("configuration validation") {
  const Graph g = Graph::from_edges({{0, 1, 1.0}});
  const NgModel m(g);
  OptimizerConfig cfg;
  cfg.max_sweeps = 0;
  CHECK_THROWS_AS(distmod::optimize(g, m, cfg), distmod::input_error);
  cfg = OptimizerConfig{};
  cfg.min_sweep_gain = 0.0;
  CHECK_THROWS_AS(distmod::optimize(g, m, cfg), distmod::input_error);
  cfg = OptimizerConfig{};
  cfg.restarts = 0;
  CHECK_THROWS_AS(distmod::optimize(g, m, cfg), distmod::input_error);

  const Graph empty = Graph::from_edges({}, 3);
  CHECK_THROWS_AS(NgModel{empty}, distmod::degeneracy_error);

  const Graph other = Graph::from_edges({{0, 1, 1.0}, {1, 2, 1.0}});
  const NgModel m3(other);
  CHECK_THROWS_AS(distmod::optimize(g, m3, OptimizerConfig{}),
                  distmod::input_error);
}

TEST_CASE("algorithm names round-trip") {
  CHECK(distmod::algorithm_from_name("lpamplus") == Algorithm::lpam_plus);
  CHECK(distmod::algorithm_from_name("louvain") == Algorithm::louvain);
  CHECK(distmod::algorithm_name(Algorithm::lpam_plus) == "lpamplus");
  CHECK_THROWS_AS(distmod::algorithm_from_name("greedy"), distmod::input_error);
}

}  // TEST_SUITE

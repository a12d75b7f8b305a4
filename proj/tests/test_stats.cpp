#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "exf/errors.hpp"
#include "exf/spectral.hpp"
#include "exf/stats.hpp"
#include "oracles/oracles.hpp"

using namespace exf;

TEST_CASE("network_stats on K5") {
  const NetworkStats s = network_stats(oracle::complete_graph(5), false);
  CHECK(s.nodes == 5);
  CHECK(s.edges == 10);
  CHECK(s.density == doctest::Approx(2.0));
  CHECK(s.mean_degree == doctest::Approx(4.0));
  CHECK(s.diameter == 1);
  CHECK(s.diameter_exact);
  CHECK(s.leading_eigenvalue == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("network_stats on P4 matches the dense eigen-oracle") {
  const Graph p4 = oracle::path_graph(4);
  const NetworkStats s = network_stats(p4, true);
  CHECK(s.diameter == 3);
  const double dense = oracle::dense_top_eigen(p4).lambda;
  CHECK(dense == doctest::Approx(1.6180339887498951).epsilon(1e-12));
  CHECK(std::abs(s.leading_eigenvalue - dense) < 1e-8);
}

TEST_CASE("leading eigenvalue of K_n is n - 1") {
  for (std::size_t n = 3; n <= 20; ++n) {
    const NetworkStats s = network_stats(oracle::complete_graph(n), false);
    CHECK(std::abs(s.leading_eigenvalue - static_cast<double>(n - 1)) < 1e-8);
  }
}

TEST_CASE("leading eigenvalue lies between mean and max degree") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_connected_graph(30 + trial, 0.08, rng);
    const Eigenpair top = leading_eigenpair(g);
    std::size_t max_deg = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) max_deg = std::max(max_deg, g.degree(v));
    const double mean = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
    CHECK(top.value >= mean - 1e-9);
    CHECK(top.value <= static_cast<double>(max_deg) + 1e-9);
  }
}

TEST_CASE("power iteration settles on bipartite graphs") {
  // Plain iteration on a star oscillates; the shifted operator must not.
  const Eigenpair top = leading_eigenpair(oracle::star_graph(9));
  CHECK(top.value == doctest::Approx(3.0).epsilon(1e-9));
  const Eigenpair cycle = leading_eigenpair(Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}));
  CHECK(cycle.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("power iteration reports non-convergence with its last iterate") {
  const Graph g = oracle::path_graph(50);
  try {
    leading_eigenpair(g, 1e-15, 3);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == 50);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("network_stats requires an edge") {
  CHECK_THROWS_AS(network_stats(Graph::from_edges(3, std::vector<Edge>{}), false), EmptyGraphError);
}

TEST_CASE("diameter is taken on the largest component") {
  // Path of 6 plus a disjoint edge.
  const Graph g = Graph::from_edges(8, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {6, 7}});
  const NetworkStats s = network_stats(g, false);
  CHECK(s.lcc_size == 6);
  CHECK(s.diameter == 5);
  CHECK(s.nodes == 8);
  CHECK(s.edges == 6);
}

TEST_CASE("certified diameter agrees with all-sources BFS on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 199);
    const double p = (1.0 + 3.0 * uniform01(rng)) / static_cast<double>(n);
    const Graph lcc = largest_component(oracle::random_graph(n, p, rng)).graph;
    const auto exact = reference::exact_diameter(lcc);
    const DiameterBounds b = certified_diameter(lcc);
    CHECK(b.exact);
    CHECK(b.lower == exact);
    CHECK(b.upper == exact);
    CHECK(exact_diameter(lcc) == exact);
  }
}

TEST_CASE("certified diameter with a BFS budget still brackets the truth") {
  const Graph g = largest_component(generate_pa_graph(400, 1, 0.0, 3)).graph;
  const auto exact = reference::exact_diameter(g);
  const DiameterBounds b = certified_diameter(g, 2);
  CHECK(b.lower <= exact);
  CHECK(b.upper >= exact);
  CHECK(b.exact == (b.lower == b.upper));
}

TEST_CASE("certified diameter needs few sweeps on a scale-free graph") {
  const Graph g = generate_pa_graph(3000, 2, 0.4, 8);
  const DiameterBounds b = certified_diameter(g);
  CHECK(b.exact);
  CHECK(b.bfs_runs < 300);
  CHECK(b.lower == exact_diameter(g));
}

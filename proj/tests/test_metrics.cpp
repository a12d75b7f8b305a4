#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "exf/metrics.hpp"
#include "exf/stats.hpp"
#include "oracles/oracles.hpp"

using namespace exf;

namespace {

Graph k4_with_pendant() {
  return Graph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
}

Graph relabel(const Graph& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.node_count(), edges);
}

}  // namespace

TEST_CASE("expected force: hand-enumerated values") {
  SUBCASE("star with five leaves, leaf seed") {
    std::vector<oracle::Sequence> seqs;
    oracle::brute_force_exf(oracle::star_graph(5), 1, &seqs);
    CHECK(seqs.size() == 4);
    for (const auto& s : seqs) CHECK(s.force == 3);
    CHECK(expected_force(oracle::star_graph(5), 1) == doctest::Approx(1.3862943611198906).epsilon(1e-14));
  }
  SUBCASE("path end seed has a single term") {
    CHECK(expected_force(oracle::path_graph(4), 0) == 0.0);
  }
  SUBCASE("path centre: every cluster covers the graph") {
    CHECK(expected_force(oracle::path_graph(3), 1) == 0.0);
  }
  SUBCASE("K4 has twelve equal terms") {
    std::vector<oracle::Sequence> seqs;
    oracle::brute_force_exf(oracle::complete_graph(4), 0, &seqs);
    CHECK(seqs.size() == 12);
    for (NodeId v = 0; v < 4; ++v)
      CHECK(expected_force(oracle::complete_graph(4), v) == doctest::Approx(2.4849066497880004).epsilon(1e-14));
  }
  SUBCASE("isolated node and single edge") {
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
    CHECK(expected_force(g, 2) == 0.0);
    CHECK(expected_force(g, 0) == 0.0);
  }
}

TEST_CASE("expected force rejects unknown ids") {
  CHECK_THROWS_AS(expected_force(oracle::path_graph(3), 3), std::invalid_argument);
}

TEST_CASE("expected force matches the brute-force oracle on every small graph") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Graph& g : oracle::all_connected_graphs(n))
      for (NodeId s = 0; s < n; ++s)
        REQUIRE(std::abs(expected_force(g, s) - oracle::brute_force_exf(g, s)) < 1e-12);
}

TEST_CASE("expected force matches the oracle on random graphs with hubs and triangles") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_connected_graph(8 + uniform_index(rng, 12), 0.3, rng);
    for (NodeId s = 0; s < g.node_count(); ++s)
      REQUIRE(std::abs(expected_force(g, s) - oracle::brute_force_exf(g, s)) < 1e-12);
  }
}

TEST_CASE("expected force is invariant under relabelling") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_connected_graph(15, 0.15, rng);
    std::vector<NodeId> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
    const Graph h = relabel(g, perm);
    for (NodeId v = 0; v < g.node_count(); ++v)
      CHECK(expected_force(g, v) == doctest::Approx(expected_force(h, perm[v])).epsilon(1e-13));
  }
}

TEST_CASE("expected force only sees the neighbourhood of radius three") {
  Rng rng(17);
  int edits = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = largest_component(generate_pa_graph(120, 1, 0.0, 100 + trial)).graph;
    const NodeId seed = static_cast<NodeId>(uniform_index(rng, g.node_count()));
    const auto dist = bfs_distances(g, seed);
    std::vector<NodeId> far;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (dist[v] != kUnreached && dist[v] >= 4) far.push_back(v);
    if (far.size() < 2) continue;
    const NodeId a = far[uniform_index(rng, far.size())];
    const NodeId b = far[uniform_index(rng, far.size())];
    if (a == b) continue;
    auto edges = g.edges();
    if (g.has_edge(a, b))
      std::erase(edges, Edge{std::min(a, b), std::max(a, b)});
    else
      edges.emplace_back(a, b);
    const Graph h = Graph::from_edges(g.node_count(), edges);
    CHECK(expected_force(h, seed) == expected_force(g, seed));
    ++edits;
  }
  CHECK(edits > 10);
}

TEST_CASE("expected force is non-negative and ln(T) for equal terms") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_connected_graph(25, 0.1, rng);
    for (NodeId v = 0; v < g.node_count(); ++v) CHECK(expected_force(g, v) >= 0.0);
  }
  // Cycles: every cluster is a path of three with two edges leaving it.
  for (std::size_t n = 6; n <= 12; ++n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
    const Graph cycle = Graph::from_edges(n, edges);
    CHECK(expected_force(cycle, 0) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  }
}

TEST_CASE("modified expected force") {
  CHECK(expected_force_modified(oracle::star_graph(5), 1, 2.0) ==
        doctest::Approx(0.9609060278364028).epsilon(1e-13));
  CHECK(expected_force_modified(oracle::complete_graph(4), 0, 2.0) ==
        doctest::Approx(4.452355019905411).epsilon(1e-13));
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(expected_force_modified(g, 3) == 0.0);
  CHECK(expected_force_modified(oracle::star_graph(5), 1, 1.0) == 0.0);  // ln(1 * 1)
  CHECK_THROWS_AS(expected_force_modified(g, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(expected_force_modified(g, 0, -1.0), std::invalid_argument);

  Rng rng(3);
  const Graph r = oracle::random_connected_graph(30, 0.1, rng);
  for (double alpha : {0.5, 2.0, 7.0})
    for (NodeId v = 0; v < r.node_count(); ++v)
      CHECK(expected_force_modified(r, v, alpha) ==
            doctest::Approx(std::log(alpha * static_cast<double>(r.degree(v))) * expected_force(r, v)));
}

TEST_CASE("parallel expected force batch equals the serial reference") {
  const Graph g = generate_pa_graph(2000, 2, 0.4, 4);
  std::vector<NodeId> nodes(g.node_count());
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  CHECK(expected_force_all(g, nodes) == reference::expected_force_all(g, nodes));
}

TEST_CASE("k-shell examples") {
  CHECK(k_shell(oracle::path_graph(4)) == std::vector<std::uint32_t>{1, 1, 1, 1});
  CHECK(k_shell(oracle::complete_graph(4)) == std::vector<std::uint32_t>{3, 3, 3, 3});
  CHECK(k_shell(k4_with_pendant()) == std::vector<std::uint32_t>{3, 3, 3, 3, 1});
  CHECK(k_shell(Graph::from_edges(2, std::vector<Edge>{})) == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("k-shell matches naive pruning on random graphs") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 300);
    const Graph g = oracle::random_graph(n, (1.0 + 8.0 * uniform01(rng)) / static_cast<double>(n), rng);
    const auto shells = k_shell(g);
    REQUIRE(shells == oracle::naive_kshell(g));
    for (NodeId v = 0; v < n; ++v) CHECK(shells[v] <= g.degree(v));
  }
}

TEST_CASE("eigenvector centrality examples") {
  SUBCASE("complete graph") {
    const auto evc = eigenvector_centrality(oracle::complete_graph(6));
    CHECK(evc.lambda == doctest::Approx(5.0).epsilon(1e-10));
    for (double v : evc.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("star with four leaves") {
    const auto evc = eigenvector_centrality(oracle::star_graph(4));
    CHECK(evc.lambda == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(evc.values[0] == doctest::Approx(1.0));
    for (NodeId v = 1; v <= 4; ++v) CHECK(evc.values[v] == doctest::Approx(0.5).epsilon(1e-8));
  }
  SUBCASE("path P4") {
    CHECK(eigenvector_centrality(oracle::path_graph(4)).lambda ==
          doctest::Approx(1.6180339887498951).epsilon(1e-9));
  }
  SUBCASE("nodes outside the largest component get zero") {
    const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}, {3, 4}});
    const auto evc = eigenvector_centrality(g);
    CHECK(evc.values[3] == 0.0);
    CHECK(evc.values[5] == 0.0);
    CHECK(evc.values[0] == doctest::Approx(1.0));
  }
  SUBCASE("edgeless graph") {
    const auto evc = eigenvector_centrality(Graph::from_edges(3, std::vector<Edge>{}));
    CHECK(evc.lambda == 0.0);
    CHECK(evc.values == std::vector<double>{0, 0, 0});
  }
}

TEST_CASE("eigenvector centrality matches the dense eigen-oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 49);
    const Graph g = oracle::random_connected_graph(n, 2.0 * uniform01(rng) / static_cast<double>(n), rng);
    const auto evc = eigenvector_centrality(g);
    const auto dense = oracle::dense_top_eigen(g);
    CHECK(oracle::cosine_similarity(evc.values, dense.vector) >= 1.0 - 1e-6);
    CHECK(std::abs(evc.lambda - dense.lambda) < 1e-6);
    CHECK(*std::max_element(evc.values.begin(), evc.values.end()) == doctest::Approx(1.0));
  }
}

TEST_CASE("all_metrics") {
  SUBCASE("vertex-transitive graph gives identical records") {
    const Graph k4 = oracle::complete_graph(4);
    const std::vector<NodeId> nodes{0, 1, 2, 3};
    const auto recs = all_metrics(k4, nodes, 2.0);
    REQUIRE(recs.size() == 4);
    for (const auto& r : recs) {
      CHECK(r.degree == 3);
      CHECK(r.exf == recs[0].exf);
      CHECK(r.exf_m == recs[0].exf_m);
      CHECK(r.kshell == 3);
      CHECK(r.evc == doctest::Approx(1.0));
    }
  }
  SUBCASE("star centre dominates a leaf") {
    const Graph star = oracle::star_graph(5);
    const std::vector<NodeId> nodes{0, 1};
    const auto recs = all_metrics(star, nodes, 2.0);
    CHECK(recs[0].exf > recs[1].exf);
    CHECK(recs[0].evc > recs[1].evc);
    CHECK(recs[0].kshell == 1);
    CHECK(recs[1].kshell == 1);
  }
  SUBCASE("empty request") {
    CHECK(all_metrics(oracle::path_graph(3), std::vector<NodeId>{}, 2.0).empty());
  }
  SUBCASE("records agree with the single-node operations") {
    const Graph g = generate_pa_graph(300, 2, 0.3, 12);
    std::vector<NodeId> nodes{0, 5, 17, 250, 299};
    const auto recs = all_metrics(g, nodes, 3.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(recs[i].exf == expected_force(g, nodes[i]));
      CHECK(recs[i].exf_m == doctest::Approx(expected_force_modified(g, nodes[i], 3.0)));
      CHECK(recs[i].kshell <= recs[i].degree);
      CHECK(recs[i].evc >= 0.0);
      CHECK(recs[i].evc <= 1.0);
    }
  }
}

TEST_CASE("metrics CSV layout") {
  std::istringstream in("10 2\n2 3\n3 10\n3 4\n");
  const Graph g = load_edge_list(in);
  std::vector<NodeId> nodes{*g.find("10"), *g.find("4"), *g.find("2"), *g.find("3")};
  std::ostringstream out;
  write_metrics_csv(g, all_metrics(g, nodes, 2.0), out);
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> first_fields;
  while (std::getline(lines, line)) first_fields.push_back(line.substr(0, line.find(',')));
  CHECK(first_fields == std::vector<std::string>{"node", "2", "3", "4", "10"});
  CHECK(out.str().find("node,degree,exf,exfm,kshell,evc\n") == 0);
  // Triangle {2, 3, 10} with a pendant: forces 1,2,1,1,2,1,2,2 from node 3.
  const double h = std::log(12.0) / 3.0 + 2.0 * std::log(6.0) / 3.0;
  CHECK(expected_force(g, *g.find("3")) == doctest::Approx(h).epsilon(1e-14));
  CHECK(out.str().find("3,3,2.02281,3.62439,2,1\n") != std::string::npos);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "exf/graph.hpp"

namespace exf {

/**
 * Expected force of `seed`.
 *
 * Enumerates every ordered pair of transmissions out of the seed: first along
 * (seed, a), then along (x, b) with x in {seed, a} and b outside {seed, a}.
 * Each sequence yields the cluster {seed, a, b}; its force is the number of
 * edges leaving the cluster. A cluster reached by several sequences counts
 * once per sequence. The result is the Shannon entropy (natural log) of the
 * forces normalized to sum to one, or 0 when there is no sequence or the
 * forces sum to zero.
 *
 * Cost is O(deg(seed)^2 + walks of length two from the seed).
 * Throws std::invalid_argument for an unknown node id.
 */
double expected_force(const Graph& g, NodeId seed);

/// ln(alpha * deg(seed)) * expected_force; 0 for isolated seeds.
/// Throws std::invalid_argument when alpha <= 0.
double expected_force_modified(const Graph& g, NodeId seed, double alpha = 2.0);

/// expected_force for each requested node, nodes spread over OpenMP threads.
std::vector<double> expected_force_all(const Graph& g, std::span<const NodeId> nodes);

/// Core number of every node (bucket peeling, O(n + m)).
std::vector<std::uint32_t> k_shell(const Graph& g);

struct EigenvectorCentrality {
  std::vector<double> values;  // max entry 1; 0 outside the largest component
  double lambda = 0.0;
  std::size_t iterations = 0;
};

/// Power iteration on the largest component (see leading_eigenpair).
/// An edgeless graph yields all zeros and lambda 0.
EigenvectorCentrality eigenvector_centrality(const Graph& g, double tol = 1e-9,
                                             std::size_t max_iter = 10000);

struct NodeMetricsRecord {
  NodeId node = 0;
  std::size_t degree = 0;
  double exf = 0.0;
  double exf_m = 0.0;
  std::uint32_t kshell = 0;
  double evc = 0.0;
};

/// One record per requested node. k-shell and eigenvector centrality are
/// computed once for the whole graph.
std::vector<NodeMetricsRecord> all_metrics(const Graph& g, std::span<const NodeId> nodes,
                                           double alpha = 2.0);
/// Same, reusing an eigenvector centrality computed by the caller.
std::vector<NodeMetricsRecord> all_metrics(const Graph& g, std::span<const NodeId> nodes,
                                           double alpha, const EigenvectorCentrality& evc);

/// CSV with header `node,degree,exf,exfm,kshell,evc`, rows ordered by
/// label_less, reals printed with 6 significant digits.
void write_metrics_csv(const Graph& g, std::span<const NodeMetricsRecord> records,
                       std::ostream& out);

namespace reference {

/// Serial loop over expected_force; the oracle for the parallel batch.
std::vector<double> expected_force_all(const Graph& g, std::span<const NodeId> nodes);

}  // namespace reference

}  // namespace exf

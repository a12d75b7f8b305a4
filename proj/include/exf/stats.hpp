#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "exf/graph.hpp"

namespace exf {

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Hop distances from `source`; kUnreached for other components.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

/// Largest finite BFS distance from `source`.
std::uint32_t eccentricity(const Graph& g, NodeId source);

/// All-sources BFS, sources spread over OpenMP threads. Max over finite
/// distances, so disconnected inputs yield the largest component diameter.
std::uint32_t exact_diameter(const Graph& g);

struct DiameterBounds {
  std::uint32_t lower = 0;
  std::uint32_t upper = 0;
  bool exact = false;
  std::size_t bfs_runs = 0;
};

/// Double-sweep lower bound refined by eccentricity bounding (each BFS
/// tightens per-node eccentricity intervals; nodes whose interval can no
/// longer move either bound are dropped). `g` must be connected.
/// With `max_bfs` = 0 the loop runs until the bounds meet.
DiameterBounds certified_diameter(const Graph& g, std::size_t max_bfs = 0);

struct NetworkStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double density = 0.0;      // edges / nodes
  double mean_degree = 0.0;  // 2 * edges / nodes
  std::size_t lcc_size = 0;
  std::size_t lcc_edges = 0;
  std::uint32_t diameter = 0;  // on the largest component
  bool diameter_exact = false;
  std::uint32_t diameter_upper = 0;
  double leading_eigenvalue = 0.0;  // adjacency of the largest component
  std::size_t eigen_iterations = 0;
};

/// Node/edge counts on the whole graph; diameter and leading eigenvalue on the
/// largest component. Throws EmptyGraphError without edges.
NetworkStats network_stats(const Graph& g, bool exact_diameter_flag);

namespace reference {

/// Serial all-sources BFS, kept as the oracle for exact_diameter.
std::uint32_t exact_diameter(const Graph& g);

}  // namespace reference

}  // namespace exf

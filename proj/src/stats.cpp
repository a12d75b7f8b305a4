#include "exf/stats.hpp"

#include <algorithm>

#include "exf/errors.hpp"
#include "exf/spectral.hpp"

namespace exf {

namespace {

// Reusable BFS buffers; returns the largest finite distance.
std::uint32_t bfs_into(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist,
                       std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::uint32_t far = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const std::uint32_t du = dist[u];
    far = du;
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = du + 1;
        queue.push_back(v);
      }
    }
  }
  return far;
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  bfs_into(g, source, dist, queue);
  return dist;
}

std::uint32_t eccentricity(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  return bfs_into(g, source, dist, queue);
}

std::uint32_t exact_diameter(const Graph& g) {
  const auto n = static_cast<std::ptrdiff_t>(g.node_count());
  std::uint32_t best = 0;
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(g.node_count());
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
#pragma omp for schedule(dynamic, 16) reduction(max : best)
    for (std::ptrdiff_t s = 0; s < n; ++s)
      best = std::max(best, bfs_into(g, static_cast<NodeId>(s), dist, queue));
  }
  return best;
}

namespace reference {

std::uint32_t exact_diameter(const Graph& g) {
  std::uint32_t best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) best = std::max(best, eccentricity(g, s));
  return best;
}

}  // namespace reference

DiameterBounds certified_diameter(const Graph& g, std::size_t max_bfs) {
  const std::size_t n = g.node_count();
  DiameterBounds out;
  if (n <= 1) {
    out.exact = true;
    return out;
  }
  if (max_bfs == 0) max_bfs = n;

  std::vector<std::uint32_t> lo(n, 0), hi(n, kUnreached);
  std::vector<char> active(n, 1);
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);

  auto sweep = [&](NodeId v) {
    const std::uint32_t ecc = bfs_into(g, v, dist, queue);
    ++out.bfs_runs;
    for (NodeId w = 0; w < n; ++w) {
      const std::uint32_t d = dist[w];
      if (d == kUnreached) continue;
      lo[w] = std::max({lo[w], d, ecc > d ? ecc - d : 0u});
      hi[w] = std::min(hi[w], ecc + d);
    }
    return ecc;
  };
  auto refresh = [&] {
    std::uint32_t lower = 0, upper = 0;
    for (NodeId w = 0; w < n; ++w) {
      lower = std::max(lower, lo[w]);
      upper = std::max(upper, hi[w]);
    }
    out.lower = lower;
    out.upper = upper;
    // A node matters only while its eccentricity could still exceed the lower
    // bound and is not yet pinned.
    bool any = false;
    for (NodeId w = 0; w < n; ++w) {
      active[w] = active[w] && hi[w] > lower && lo[w] < hi[w];
      any = any || active[w];
    }
    return any;
  };

  // Double sweep from the highest-degree node.
  NodeId start = 0;
  for (NodeId v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(start)) start = v;
  sweep(start);
  NodeId far = start;
  for (NodeId w = 0; w < n; ++w)
    if (dist[w] != kUnreached && dist[w] > dist[far]) far = w;
  sweep(far);

  bool pick_high = true;
  while (refresh() && out.lower < out.upper && out.bfs_runs < max_bfs) {
    NodeId pick = static_cast<NodeId>(n);
    for (NodeId w = 0; w < n; ++w) {
      if (!active[w]) continue;
      if (pick == n) {
        pick = w;
        continue;
      }
      const bool better =
          pick_high ? (hi[w] > hi[pick] || (hi[w] == hi[pick] && g.degree(w) > g.degree(pick)))
                    : (lo[w] < lo[pick] || (lo[w] == lo[pick] && g.degree(w) > g.degree(pick)));
      if (better) pick = w;
    }
    sweep(pick);
    pick_high = !pick_high;
  }
  out.exact = out.lower == out.upper;
  return out;
}

NetworkStats network_stats(const Graph& g, bool exact_diameter_flag) {
  if (g.edge_count() == 0) throw EmptyGraphError();
  NetworkStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.density = static_cast<double>(s.edges) / static_cast<double>(s.nodes);
  s.mean_degree = 2.0 * s.density;

  const Subgraph lcc = largest_component(g);
  s.lcc_size = lcc.graph.node_count();
  s.lcc_edges = lcc.graph.edge_count();
  if (exact_diameter_flag) {
    s.diameter = exact_diameter(lcc.graph);
    s.diameter_upper = s.diameter;
    s.diameter_exact = true;
  } else {
    const DiameterBounds b = certified_diameter(lcc.graph);
    s.diameter = b.lower;
    s.diameter_upper = b.upper;
    s.diameter_exact = b.exact;
  }
  const Eigenpair top = leading_eigenpair(lcc.graph, 1e-9, 10000);
  s.leading_eigenvalue = top.value;
  s.eigen_iterations = top.iterations;
  return s;
}

}  // namespace exf

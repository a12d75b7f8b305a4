#include "exf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "exf/spectral.hpp"

namespace exf {

namespace {

// Per-thread scratch for the cluster enumeration. The marker arrays are
// cleared after each use, so one instance serves any number of seeds.
struct ForceWorkspace {
  explicit ForceWorkspace(std::size_t n) : near_seed(n, 0), near_first(n, 0) {}
  std::vector<char> near_seed;
  std::vector<char> near_first;
  std::vector<std::uint64_t> forces;
};

double entropy_of_forces(std::vector<std::uint64_t>& forces) {
  if (forces.empty()) return 0.0;
  std::sort(forces.begin(), forces.end());
  const double total = static_cast<double>(
      std::accumulate(forces.begin(), forces.end(), std::uint64_t{0}));
  if (total == 0.0) return 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < forces.size();) {
    std::size_t j = i;
    while (j < forces.size() && forces[j] == forces[i]) ++j;
    if (forces[i] != 0) {
      const double p = static_cast<double>(forces[i]) / total;
      h -= static_cast<double>(j - i) * p * std::log(p);
    }
    i = j;
  }
  return h;
}

double expected_force_with(const Graph& g, NodeId seed, ForceWorkspace& ws) {
  const auto seed_nb = g.neighbors(seed);
  const std::uint64_t deg_s = seed_nb.size();
  ws.forces.clear();
  for (NodeId v : seed_nb) ws.near_seed[v] = 1;

  for (NodeId a : seed_nb) {
    const auto a_nb = g.neighbors(a);
    // Two of the three cluster members are already joined by (seed, a).
    const std::uint64_t pair_out = deg_s + a_nb.size() - 2;
    for (NodeId b : a_nb) ws.near_first[b] = 1;

    // Second transmission from the seed.
    for (NodeId b : seed_nb) {
      if (b == a) continue;
      const std::uint64_t inside = 1 + ws.near_first[b];  // (seed, b) and maybe (a, b)
      ws.forces.push_back(pair_out + g.degree(b) - 2 * inside);
    }
    // Second transmission from a.
    for (NodeId b : a_nb) {
      if (b == seed) continue;
      const std::uint64_t inside = 1 + ws.near_seed[b];  // (a, b) and maybe (seed, b)
      ws.forces.push_back(pair_out + g.degree(b) - 2 * inside);
    }

    for (NodeId b : a_nb) ws.near_first[b] = 0;
  }

  for (NodeId v : seed_nb) ws.near_seed[v] = 0;
  return entropy_of_forces(ws.forces);
}

void check_node(const Graph& g, NodeId v) {
  if (!g.contains(v)) throw std::invalid_argument("node id " + std::to_string(v) + " out of range");
}

}  // namespace

double expected_force(const Graph& g, NodeId seed) {
  check_node(g, seed);
  ForceWorkspace ws(g.node_count());
  return expected_force_with(g, seed, ws);
}

double expected_force_modified(const Graph& g, NodeId seed, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  check_node(g, seed);
  const std::size_t deg = g.degree(seed);
  if (deg == 0) return 0.0;
  return std::log(alpha * static_cast<double>(deg)) * expected_force(g, seed);
}

std::vector<double> expected_force_all(const Graph& g, std::span<const NodeId> nodes) {
  for (NodeId v : nodes) check_node(g, v);
  std::vector<double> out(nodes.size());
  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel
  {
    ForceWorkspace ws(g.node_count());
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      out[k] = expected_force_with(g, nodes[k], ws);
    }
  }
  return out;
}

namespace reference {

std::vector<double> expected_force_all(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(exf::expected_force(g, v));
  return out;
}

}  // namespace reference

std::vector<std::uint32_t> k_shell(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(g.degree(v));
    max_deg = std::max<std::size_t>(max_deg, deg[v]);
  }
  // Nodes sorted by current degree, with bucket starts and each node's slot.
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (NodeId v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (auto& b : bin) {
    const std::size_t size = b;
    b = start;
    start += size;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> slot(n);
  for (NodeId v = 0; v < n; ++v) {
    slot[v] = bin[deg[v]]++;
    order[slot[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] <= deg[v]) continue;
      // Swap u with the first node of its bucket, then shrink the bucket.
      const std::size_t du = deg[u];
      const std::size_t first = bin[du];
      const NodeId w = order[first];
      if (w != u) {
        std::swap(order[slot[u]], order[first]);
        std::swap(slot[u], slot[w]);
      }
      ++bin[du];
      --deg[u];
    }
  }
  return deg;
}

EigenvectorCentrality eigenvector_centrality(const Graph& g, double tol, std::size_t max_iter) {
  EigenvectorCentrality out;
  out.values.assign(g.node_count(), 0.0);
  if (g.edge_count() == 0) return out;
  const Subgraph lcc = largest_component(g);
  const Eigenpair top = leading_eigenpair(lcc.graph, tol, max_iter);
  for (std::size_t i = 0; i < top.vector.size(); ++i) out.values[lcc.new_to_old[i]] = top.vector[i];
  out.lambda = top.value;
  out.iterations = top.iterations;
  return out;
}

std::vector<NodeMetricsRecord> all_metrics(const Graph& g, std::span<const NodeId> nodes,
                                           double alpha) {
  if (nodes.empty()) return {};
  return all_metrics(g, nodes, alpha, eigenvector_centrality(g));
}

std::vector<NodeMetricsRecord> all_metrics(const Graph& g, std::span<const NodeId> nodes,
                                           double alpha, const EigenvectorCentrality& evc) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (nodes.empty()) return {};
  const auto exf_values = expected_force_all(g, nodes);
  const auto shells = k_shell(g);

  std::vector<NodeMetricsRecord> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeId v = nodes[i];
    NodeMetricsRecord r;
    r.node = v;
    r.degree = g.degree(v);
    r.exf = exf_values[i];
    r.exf_m = r.degree == 0 ? 0.0 : std::log(alpha * static_cast<double>(r.degree)) * r.exf;
    r.kshell = shells[v];
    r.evc = evc.values[v];
    out.push_back(r);
  }
  return out;
}

void write_metrics_csv(const Graph& g, std::span<const NodeMetricsRecord> records,
                       std::ostream& out) {
  std::vector<const NodeMetricsRecord*> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [&](const auto* a, const auto* b) {
    return label_less(g.label(a->node), g.label(b->node));
  });
  out << "node,degree,exf,exfm,kshell,evc\n";
  for (const auto* r : rows)
    out << fmt::format("{},{},{:.6g},{:.6g},{},{:.6g}\n", g.label(r->node), r->degree, r->exf,
                       r->exf_m, r->kshell, r->evc);
}

}  // namespace exf

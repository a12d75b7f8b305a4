#include "exf/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "exf/errors.hpp"
#include "exf/rng.hpp"

namespace exf {

Graph Graph::from_edges(std::vector<std::string> labels, std::span<const Edge> edges,
                        std::size_t* dropped) {
  const std::size_t n = labels.size();
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  std::size_t self_loops = 0;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) {
      ++self_loops;
      continue;
    }
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  const auto unique_end = std::unique(normalized.begin(), normalized.end());
  if (dropped) *dropped = self_loops + static_cast<std::size_t>(normalized.end() - unique_end);
  normalized.erase(unique_end, normalized.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : normalized) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.resize(2 * normalized.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so each list fills in increasing order except
  // for the "v side" entries, which are sorted below.
  for (auto [u, v] : normalized) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));

  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_.emplace(labels[i], static_cast<NodeId>(i)).second)
      throw std::invalid_argument("duplicate node label '" + labels[i] + "'");
  }
  g.labels_ = std::move(labels);
  return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return from_edges(std::move(labels), edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::find(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::validate() const {
  const std::size_t n = node_count();
  if (labels_.size() != n || index_.size() != n) throw std::logic_error("label map size mismatch");
  for (NodeId u = 0; u < n; ++u) {
    const auto nb = neighbors(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const NodeId v = nb[k];
      if (v >= n) throw std::logic_error("neighbor id out of range");
      if (v == u) throw std::logic_error("self-loop at " + labels_[u]);
      if (k > 0 && nb[k - 1] >= v) throw std::logic_error("neighbor list not strictly increasing");
      if (!has_edge(v, u)) throw std::logic_error("asymmetric adjacency");
    }
  }
  if (neighbors_.size() % 2 != 0) throw std::logic_error("odd adjacency total");
}

Graph load_edge_list(std::istream& in, std::string_view source_name, LoadReport* report) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  LoadReport local;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r\v\f");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      ++local.comments;
      continue;
    }
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b))
      throw ParseError(std::string(source_name), line_no, "expected two node labels");
    ++local.lines;
    // Register both labels even for self-loops so ids follow first appearance.
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    edges.emplace_back(u, v);
  }

  Graph g = Graph::from_edges(std::move(labels), edges, &local.dropped_edges);
  if (report) *report = local;
  if (g.edge_count() == 0) throw EmptyGraphError();
  return g;
}

Graph load_edge_list_file(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_edge_list(in, path, report);
}

bool label_less(std::string_view a, std::string_view b) noexcept {
  auto numeric = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;
  if (na) {
    const auto strip = [](std::string_view s) {
      const auto p = s.find_first_not_of('0');
      return p == std::string_view::npos ? std::string_view{} : s.substr(p);
    };
    const auto sa = strip(a), sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  std::vector<std::pair<std::string_view, std::string_view>> rows;
  rows.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) {
    std::string_view a = g.label(u), b = g.label(v);
    if (label_less(b, a)) std::swap(a, b);
    rows.emplace_back(a, b);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return label_less(x.first, y.first);
    return label_less(x.second, y.second);
  });
  for (const auto& [a, b] : rows) out << a << ' ' << b << '\n';
}

std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> comp(n, kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (comp[v] == kUnset) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

Subgraph largest_component(const Graph& g) {
  std::size_t count = 0;
  const auto comp = connected_components(g, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  // Components are numbered by their smallest node, so the first maximum wins ties.
  const std::uint32_t best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  Subgraph sub;
  sub.old_to_new.assign(g.node_count(), Subgraph::kAbsent);
  std::vector<std::string> labels;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (count == 0 || comp[v] != best) continue;
    sub.old_to_new[v] = static_cast<NodeId>(sub.new_to_old.size());
    sub.new_to_old.push_back(v);
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (sub.old_to_new[u] != Subgraph::kAbsent)
      edges.emplace_back(sub.old_to_new[u], sub.old_to_new[v]);
  sub.graph = Graph::from_edges(std::move(labels), edges);
  return sub;
}

Graph generate_pa_graph(std::size_t n, std::size_t m_per_node, double leaf_fraction,
                        std::uint64_t rng_seed) {
  if (m_per_node < 1) throw std::invalid_argument("m_per_node must be >= 1");
  if (n < m_per_node + 1) throw std::invalid_argument("n must be >= m_per_node + 1");
  if (!(leaf_fraction >= 0.0 && leaf_fraction <= 1.0))
    throw std::invalid_argument("leaf_fraction must lie in [0, 1]");

  Rng rng(derive_seed(rng_seed, 0x5041));
  std::vector<Edge> edges{{0, 1}};
  // Every edge contributes both endpoints; a uniform pick is degree-proportional.
  std::vector<NodeId> endpoints{0, 1};
  std::vector<NodeId> targets;

  for (std::size_t i = 2; i < n; ++i) {
    const bool leaf = uniform01(rng) < leaf_fraction;
    const std::size_t want = std::min(leaf ? std::size_t{1} : m_per_node, i);
    targets.clear();
    if (want == i) {
      for (NodeId t = 0; t < i; ++t) targets.push_back(t);
    } else {
      while (targets.size() < want) {
        const NodeId t = endpoints[uniform_index(rng, endpoints.size())];
        if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
      }
    }
    for (NodeId t : targets) {
      edges.emplace_back(static_cast<NodeId>(i), t);
      endpoints.push_back(static_cast<NodeId>(i));
      endpoints.push_back(t);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace exf

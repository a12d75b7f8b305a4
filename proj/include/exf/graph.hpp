#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace exf {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/**
 * Immutable simple undirected graph in compressed adjacency form.
 *
 * Nodes carry dense ids 0..node_count()-1 and an external label (the token
 * that named them in the source file). Neighbor lists are strictly
 * increasing, symmetric and free of self-loops.
 */
class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Builds from arbitrary edges over `labels.size()` nodes. Self-loops and
  /// duplicates are dropped; `dropped` (if given) receives their count.
  static Graph from_edges(std::vector<std::string> labels, std::span<const Edge> edges,
                          std::size_t* dropped = nullptr);

  /// Convenience: nodes labelled "0".."n-1".
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;
  bool contains(NodeId v) const noexcept { return v < node_count(); }

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<NodeId> find(const std::string& label) const;

  /// Every edge once, as (u, v) with u < v, in increasing order.
  std::vector<Edge> edges() const;

  /// Re-checks the structural invariants; throws std::logic_error on violation.
  void validate() const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return neighbors_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Orders labels numerically when both are unsigned integers, else bytewise.
/// Numeric labels sort before non-numeric ones.
bool label_less(std::string_view a, std::string_view b) noexcept;

struct LoadReport {
  std::size_t lines = 0;
  std::size_t comments = 0;
  std::size_t dropped_edges = 0;  // self-loops plus duplicates
};

/// Parses a whitespace-separated edge list. '#' starts a comment line; tokens
/// past the second are ignored. Dense ids follow first appearance.
/// Throws ParseError on a line with fewer than two tokens, EmptyGraphError if
/// no edge survives.
Graph load_edge_list(std::istream& in, std::string_view source_name = "<stream>",
                     LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, LoadReport* report = nullptr);

/// One "label label" line per edge, endpoints and lines ordered by label_less.
void write_edge_list(const Graph& g, std::ostream& out);

/// Component id per node, numbered in order of each component's smallest node.
std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr);

struct Subgraph {
  Graph graph;
  /// old dense id -> new dense id, or kAbsent when the node was not kept.
  std::vector<NodeId> old_to_new;
  std::vector<NodeId> new_to_old;
  static constexpr NodeId kAbsent = static_cast<NodeId>(-1);
};

/// Induced subgraph on the largest component; ties go to the component that
/// contains the smallest dense id.
Subgraph largest_component(const Graph& g);

/// Preferential-attachment growth from a connected pair. Each arrival links to
/// one existing node with probability `leaf_fraction`, else to `m_per_node`
/// distinct existing nodes (capped by how many exist), chosen proportionally
/// to degree. Deterministic in `rng_seed`.
Graph generate_pa_graph(std::size_t n, std::size_t m_per_node, double leaf_fraction,
                        std::uint64_t rng_seed);

}  // namespace exf

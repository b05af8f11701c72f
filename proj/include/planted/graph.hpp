#ifndef PLANTED_GRAPH_HPP
#define PLANTED_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace planted {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // always first < second

/**
 * Finite simple undirected graph on vertices 0..vertex_count()-1.
 *
 * Edges are stored sorted, and a bit-packed adjacency matrix is kept
 * alongside for the backtracking searches.
 */
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range
  /// endpoints. Edge orientation is normalized.
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(Vertex u, Vertex v) const {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
  }
  std::span<const std::uint64_t> row(Vertex v) const {
    return {adjacency_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }
  int degree(Vertex v) const { return degrees_[static_cast<std::size_t>(v)]; }

  /// Number of vertices that touch at least one edge.
  int support_size() const;

  /// Graph with vertex i renamed perm[i]; perm must be a permutation.
  Graph relabeled(std::span<const int> perm) const;

  /// Subgraph formed by the listed edge indices, with isolated vertices
  /// dropped and the remaining vertices renumbered in increasing order.
  Graph edge_subgraph(std::span<const int> edge_indices) const;

  /// Induced subgraph on the vertices whose bit is set (vertex_count <= 64).
  Graph induced(std::uint64_t vertex_mask) const;

  /// Edges of the subgraph induced by a vertex mask (vertex_count <= 64).
  int induced_edge_count(std::uint64_t vertex_mask) const;

  bool operator==(const Graph& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adjacency_;
  std::vector<int> degrees_;
};

/// Reads the edge-list format: first non-comment line is the vertex count,
/// every later non-empty line not starting with '#' is "u v".
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
std::string to_edge_list(const Graph& g);

Graph disjoint_union(const Graph& a, const Graph& b);

namespace families {

Graph clique(int k);
Graph cycle(int k);
/// Path on k vertices (k - 1 edges).
Graph path(int k);
Graph perfect_matching(int n);
/// Clique on {0..k-1} plus a pendant edge i -- (k+i) for each clique vertex.
Graph sun(int k);
Graph disjoint_cliques(std::span<const int> sizes);
/// k-cycle with one pendant edge hanging off every cycle vertex.
Graph cycle_with_out_edges(int k);

}  // namespace families

struct FamilyParams {
  std::optional<int> k;
  std::optional<int> n;
  std::vector<int> sizes;
};

/// Dispatches on family name: clique, cycle, path, matching (alias
/// perfect_matching), sun, disjoint_cliques, cycle_out (alias
/// cycle_with_out_edges), edge.
Graph generate(std::string_view family, const FamilyParams& params);

}  // namespace planted

#endif  // PLANTED_GRAPH_HPP

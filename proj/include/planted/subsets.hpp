#ifndef PLANTED_SUBSETS_HPP
#define PLANTED_SUBSETS_HPP

#include "planted/errors.hpp"
#include "planted/graph.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace planted {

inline constexpr int kMaxSubsetVertices = 28;

/// Low-word adjacency masks; requires vertex_count <= 64.
inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) masks[static_cast<std::size_t>(v)] = g.row(v)[0];
  return masks;
}

/// True when every vertex of `mask` has a neighbor inside `mask`.
inline bool spans_without_isolated(const std::vector<std::uint64_t>& adj, std::uint64_t mask) {
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    if ((adj[static_cast<std::size_t>(std::countr_zero(rest))] & mask) == 0) return false;
  }
  return true;
}

/// Visits every nonempty vertex subset W in Gray-code order as
/// visit(mask, |W|, e(H[W])). Throws BudgetExceeded above `max_vertices`.
template <typename Visit>
void for_each_vertex_subset(const Graph& g, Visit&& visit, int max_vertices = kMaxSubsetVertices) {
  const int n = g.vertex_count();
  if (n > max_vertices) {
    throw BudgetExceeded("vertex-subset search limited to " + std::to_string(max_vertices) +
                         " vertices, pattern has " + std::to_string(n));
  }
  const auto adj = adjacency_masks(g);
  std::uint64_t mask = 0;
  int edges = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << v;
    const int touched = std::popcount(adj[static_cast<std::size_t>(v)] & mask);
    if (mask & bit) {
      mask ^= bit;
      edges -= touched;
    } else {
      mask |= bit;
      edges += touched;
    }
    visit(mask, std::popcount(mask), edges);
  }
}

inline std::vector<Vertex> mask_to_vertices(std::uint64_t mask) {
  std::vector<Vertex> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

/// Lexicographic comparison of the sorted vertex lists of two masks of equal
/// popcount.
inline bool lex_less_same_size(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (a >> std::countr_zero(diff)) & 1U;
}

}  // namespace planted

#endif  // PLANTED_SUBSETS_HPP

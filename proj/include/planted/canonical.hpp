#ifndef PLANTED_CANONICAL_HPP
#define PLANTED_CANONICAL_HPP

#include "planted/graph.hpp"
#include "planted/numeric.hpp"

#include <compare>
#include <vector>

namespace planted {

/**
 * Isomorphism-invariant form of a graph: the lexicographically smallest
 * sorted edge list over the relabelings reached by the individualization /
 * refinement search, plus |Aut(G)|.
 */
struct CanonicalForm {
  int vertex_count = 0;
  std::vector<Edge> edges;
  BigInt automorphism_order = 1;

  int edge_count() const { return static_cast<int>(edges.size()); }
  Graph graph() const { return Graph(vertex_count, edges); }

  bool operator==(const CanonicalForm& other) const {
    return vertex_count == other.vertex_count && edges == other.edges;
  }
  std::strong_ordering operator<=>(const CanonicalForm& other) const {
    if (auto c = vertex_count <=> other.vertex_count; c != 0) return c;
    return edges <=> other.edges;
  }
};

struct CanonicalLabeling {
  CanonicalForm form;
  std::vector<int> labeling;  // original vertex -> canonical index
};

/// One step of a stabilizer chain: `base` is fixed at this level and `orbit`
/// is its orbit under the automorphisms fixing all earlier base points.
struct ChainLevel {
  Vertex base = 0;
  std::vector<Vertex> orbit;
};

/// Stabilizer chain of Aut(G); the product of orbit sizes is |Aut(G)|.
std::vector<ChainLevel> stabilizer_chain(const Graph& g);

BigInt automorphism_order(const Graph& g);

/// Cheap upper bound on |Aut(G)| from equitable-partition cell sizes and
/// component multiplicities.
BigInt automorphism_order_bound(const Graph& g);
CanonicalLabeling canonical_labeling(const Graph& g);
CanonicalForm canonical_form(const Graph& g);
bool are_isomorphic(const Graph& a, const Graph& b);

}  // namespace planted

#endif  // PLANTED_CANONICAL_HPP

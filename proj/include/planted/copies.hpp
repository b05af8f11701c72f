#ifndef PLANTED_COPIES_HPP
#define PLANTED_COPIES_HPP

#include "planted/canonical.hpp"
#include "planted/graph.hpp"
#include "planted/numeric.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace planted {

/// Injective vertex map from a pattern into a host (pattern vertex -> host vertex).
using Embedding = std::vector<Vertex>;

/// Ordering constraint map[smaller] < map[larger] on pattern vertices.
struct OrderConstraint {
  Vertex smaller;
  Vertex larger;
};

/// Constraints that keep exactly one embedding per copy: for each level of
/// the stabilizer chain, the base point must map below every other member
/// of its orbit.
std::vector<OrderConstraint> symmetry_breaking_constraints(const Graph& pattern);

/**
 * Backtracking subgraph-isomorphism search (non-induced).
 *
 * With `break_symmetry` set, each copy of the pattern in the host is
 * reported exactly once; otherwise every embedding is reported. The
 * visitor returns false to stop early. Visiting order is deterministic.
 */
class CopyFinder {
 public:
  CopyFinder(const Graph& pattern, bool break_symmetry = true);

  const Graph& pattern() const { return pattern_; }

  /// Returns the number of embeddings visited.
  std::uint64_t for_each(const Graph& host,
                         const std::function<bool(std::span<const Vertex>)>& visit) const;
  std::uint64_t count(const Graph& host) const;
  bool exists(const Graph& host) const;

 private:
  Graph pattern_;
  std::vector<Vertex> order_;                    // search order of pattern vertices
  std::vector<std::vector<int>> back_neighbors_;  // earlier positions adjacent to position i
  std::vector<std::vector<int>> must_exceed_;     // earlier positions whose image must be smaller
  std::vector<std::vector<int>> must_precede_;    // earlier positions whose image must be larger
};

/// Host edges covered by an embedding, sorted.
std::vector<Edge> copy_edges(const Graph& pattern, std::span<const Vertex> embedding);

/// M_H = (n)_{v(H)} / |Aut H|. Throws std::invalid_argument if v(H) > n.
BigInt count_copies_in_complete(const Graph& pattern, const BigInt& n);

/// Every copy of `pattern` in `host`, each as a sorted host edge list.
std::vector<std::vector<Edge>> enumerate_copies(const Graph& pattern, const Graph& host);

/// M_{J,H}: number of copies of `sub` contained in `host`.
BigInt count_copies_in(const Graph& sub, const Graph& host);

struct SubgraphClass {
  Graph representative;   // no isolated vertices
  CanonicalForm form;
  std::uint64_t occurrences = 0;  // edge subsets of H in this class, i.e. M_{J,H}
};

/// One entry per isomorphism class of edge subsets J of H with
/// e(J) >= min_edges, sorted by canonical form. Throws BudgetExceeded when
/// e(H) > max_edges.
std::vector<SubgraphClass> enumerate_subgraphs(const Graph& h, int min_edges,
                                               int max_edges = 24);

}  // namespace planted

#endif  // PLANTED_COPIES_HPP

#include "planted/copies.hpp"

#include "planted/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace planted {

std::vector<OrderConstraint> symmetry_breaking_constraints(const Graph& pattern) {
  std::vector<OrderConstraint> constraints;
  for (const ChainLevel& level : stabilizer_chain(pattern)) {
    for (Vertex w : level.orbit) {
      if (w != level.base) constraints.push_back({level.base, w});
    }
  }
  return constraints;
}

CopyFinder::CopyFinder(const Graph& pattern, bool break_symmetry) : pattern_(pattern) {
  const int n = pattern.vertex_count();
  std::vector<int> placed_neighbors(static_cast<std::size_t>(n), 0);
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  // Most-constrained-first: prefer vertices with many placed neighbors,
  // then high degree, then low index.
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      if (best < 0) {
        best = v;
        continue;
      }
      const auto key = [&](int x) {
        return std::pair{placed_neighbors[static_cast<std::size_t>(x)], pattern.degree(x)};
      };
      if (key(v) > key(best)) best = v;
    }
    placed[static_cast<std::size_t>(best)] = true;
    order_.push_back(best);
    for (int u = 0; u < n; ++u) {
      if (pattern.has_edge(best, u)) ++placed_neighbors[static_cast<std::size_t>(u)];
    }
  }
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;

  back_neighbors_.resize(static_cast<std::size_t>(n));
  must_exceed_.resize(static_cast<std::size_t>(n));
  must_precede_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (pattern.has_edge(order_[static_cast<std::size_t>(i)], order_[static_cast<std::size_t>(j)])) {
        back_neighbors_[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }
  if (break_symmetry) {
    for (const OrderConstraint& c : symmetry_breaking_constraints(pattern)) {
      const int ps = position[static_cast<std::size_t>(c.smaller)];
      const int pl = position[static_cast<std::size_t>(c.larger)];
      if (ps < pl) {
        must_exceed_[static_cast<std::size_t>(pl)].push_back(ps);
      } else {
        must_precede_[static_cast<std::size_t>(ps)].push_back(pl);
      }
    }
  }
}

std::uint64_t CopyFinder::for_each(
    const Graph& host, const std::function<bool(std::span<const Vertex>)>& visit) const {
  const int n = pattern_.vertex_count();
  const int hn = host.vertex_count();
  if (n > hn) return 0;
  const std::size_t words = host.words_per_row();
  std::vector<Vertex> image_by_pos(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> image(static_cast<std::size_t>(n), -1);
  std::vector<std::uint64_t> used(std::max<std::size_t>(words, 1), 0);
  std::vector<std::uint64_t> all(std::max<std::size_t>(words, 1), 0);
  for (int v = 0; v < hn; ++v) all[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
  std::vector<std::vector<std::uint64_t>> cand(static_cast<std::size_t>(n),
                                               std::vector<std::uint64_t>(all.size()));
  std::uint64_t visited = 0;
  bool stop = false;

  auto search = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      ++visited;
      if (!visit(image)) stop = true;
      return;
    }
    const Vertex x = order_[static_cast<std::size_t>(pos)];
    auto& c = cand[static_cast<std::size_t>(pos)];
    for (std::size_t w = 0; w < c.size(); ++w) c[w] = all[w] & ~used[w];
    for (int j : back_neighbors_[static_cast<std::size_t>(pos)]) {
      const auto row = host.row(image_by_pos[static_cast<std::size_t>(j)]);
      for (std::size_t w = 0; w < words; ++w) c[w] &= row[w];
    }
    Vertex lower = -1;
    Vertex upper = hn;
    for (int j : must_exceed_[static_cast<std::size_t>(pos)]) {
      lower = std::max(lower, image_by_pos[static_cast<std::size_t>(j)]);
    }
    for (int j : must_precede_[static_cast<std::size_t>(pos)]) {
      upper = std::min(upper, image_by_pos[static_cast<std::size_t>(j)]);
    }
    const int need_degree = pattern_.degree(x);
    for (std::size_t w = 0; w < c.size() && !stop; ++w) {
      std::uint64_t bits = c[w];
      while (bits != 0 && !stop) {
        const Vertex h = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        if (h <= lower) continue;
        if (h >= upper) return;
        if (host.degree(h) < need_degree) continue;
        image_by_pos[static_cast<std::size_t>(pos)] = h;
        image[static_cast<std::size_t>(x)] = h;
        used[static_cast<std::size_t>(h) >> 6] |= std::uint64_t{1} << (h & 63);
        self(self, pos + 1);
        used[static_cast<std::size_t>(h) >> 6] &= ~(std::uint64_t{1} << (h & 63));
      }
    }
  };
  search(search, 0);
  return visited;
}

std::uint64_t CopyFinder::count(const Graph& host) const {
  return for_each(host, [](std::span<const Vertex>) { return true; });
}

bool CopyFinder::exists(const Graph& host) const {
  return for_each(host, [](std::span<const Vertex>) { return false; }) > 0;
}

std::vector<Edge> copy_edges(const Graph& pattern, std::span<const Vertex> embedding) {
  std::vector<Edge> edges;
  edges.reserve(pattern.edges().size());
  for (const auto& [u, v] : pattern.edges()) {
    Vertex a = embedding[static_cast<std::size_t>(u)];
    Vertex b = embedding[static_cast<std::size_t>(v)];
    if (a > b) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

BigInt count_copies_in_complete(const Graph& pattern, const BigInt& n) {
  if (BigInt(pattern.vertex_count()) > n) {
    throw std::invalid_argument("pattern has more vertices than the host");
  }
  return falling_factorial(n, static_cast<std::uint64_t>(pattern.vertex_count())) /
         automorphism_order(pattern);
}

std::vector<std::vector<Edge>> enumerate_copies(const Graph& pattern, const Graph& host) {
  std::vector<std::vector<Edge>> copies;
  CopyFinder finder(pattern);
  finder.for_each(host, [&](std::span<const Vertex> emb) {
    copies.push_back(copy_edges(pattern, emb));
    return true;
  });
  return copies;
}

BigInt count_copies_in(const Graph& sub, const Graph& host) {
  return CopyFinder(sub).count(host);
}

std::vector<SubgraphClass> enumerate_subgraphs(const Graph& h, int min_edges, int max_edges) {
  const int e = h.edge_count();
  if (e > max_edges) {
    throw BudgetExceeded("subgraph enumeration: e(H) = " + std::to_string(e) +
                         " exceeds cap " + std::to_string(max_edges));
  }
  if (e > 62) throw BudgetExceeded("subgraph enumeration limited to 62 edges");
  min_edges = std::max(min_edges, 1);
  std::map<CanonicalForm, SubgraphClass> classes;
  std::vector<int> chosen;
  const std::uint64_t limit = std::uint64_t{1} << e;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) < min_edges) continue;
    chosen.clear();
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      chosen.push_back(std::countr_zero(rest));
    }
    Graph sub = h.edge_subgraph(chosen);
    CanonicalForm form = canonical_form(sub);
    auto it = classes.find(form);
    if (it == classes.end()) {
      SubgraphClass cls{std::move(sub), form, 1};
      classes.emplace(std::move(form), std::move(cls));
    } else {
      ++it->second.occurrences;
    }
  }
  std::vector<SubgraphClass> out;
  out.reserve(classes.size());
  for (auto& [form, cls] : classes) out.push_back(std::move(cls));
  return out;
}

}  // namespace planted

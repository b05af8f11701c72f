#include "planted/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace planted {

namespace {

using Cell = std::vector<Vertex>;
using Partition = std::vector<Cell>;

class Refiner {
 public:
  explicit Refiner(const Graph& g) : g_(g), neighbors_(static_cast<std::size_t>(g.vertex_count())) {
    for (const auto& [u, v] : g.edges()) {
      neighbors_[static_cast<std::size_t>(u)].push_back(v);
      neighbors_[static_cast<std::size_t>(v)].push_back(u);
    }
  }

  const Graph& graph() const { return g_; }

  // Equitable refinement. Each pass splits every cell by the vector of
  // neighbor counts into the cells of the partition at the start of the
  // pass; sub-cells are ordered by that vector, so the result depends only
  // on the structure and the incoming cell order.
  void refine(Partition& cells) const {
    const std::size_t n = static_cast<std::size_t>(g_.vertex_count());
    std::vector<int> cell_of(n);
    std::vector<int> sig;
    std::vector<Vertex> order;
    while (true) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (Vertex v : cells[i]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
      }
      const std::size_t k = cells.size();
      sig.assign(n * k, 0);
      for (std::size_t v = 0; v < n; ++v) {
        for (Vertex u : neighbors_[v]) ++sig[v * k + static_cast<std::size_t>(cell_of[static_cast<std::size_t>(u)])];
      }
      auto key_less = [&](Vertex a, Vertex b) {
        const int* pa = sig.data() + static_cast<std::size_t>(a) * k;
        const int* pb = sig.data() + static_cast<std::size_t>(b) * k;
        return std::lexicographical_compare(pa, pa + k, pb, pb + k);
      };
      auto key_equal = [&](Vertex a, Vertex b) {
        const int* pa = sig.data() + static_cast<std::size_t>(a) * k;
        const int* pb = sig.data() + static_cast<std::size_t>(b) * k;
        return std::equal(pa, pa + k, pb);
      };
      Partition next;
      next.reserve(n);
      for (const Cell& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        order = cell;
        std::stable_sort(order.begin(), order.end(), key_less);
        Cell run{order.front()};
        for (std::size_t i = 1; i < order.size(); ++i) {
          if (!key_equal(order[i], order[i - 1])) {
            next.push_back(std::move(run));
            run.clear();
          }
          run.push_back(order[i]);
        }
        next.push_back(std::move(run));
      }
      const bool stable = next.size() == cells.size();
      cells = std::move(next);
      if (stable) return;
    }
  }

  // Neighbor-count matrix between cells of an equitable partition, read off
  // one representative per cell.
  std::vector<int> quotient(const Partition& cells) const {
    const std::size_t n = static_cast<std::size_t>(g_.vertex_count());
    std::vector<int> cell_of(n);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (Vertex v : cells[i]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<int> q(cells.size() * cells.size(), 0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (Vertex u : neighbors_[static_cast<std::size_t>(cells[i].front())]) {
        ++q[i * cells.size() + static_cast<std::size_t>(cell_of[static_cast<std::size_t>(u)])];
      }
    }
    return q;
  }

  Partition initial() const {
    Partition cells;
    if (g_.vertex_count() > 0) {
      Cell all(static_cast<std::size_t>(g_.vertex_count()));
      for (int v = 0; v < g_.vertex_count(); ++v) all[static_cast<std::size_t>(v)] = v;
      cells.push_back(std::move(all));
      refine(cells);
    }
    return cells;
  }

  Partition individualize(const Partition& cells, Vertex v) const {
    Partition out;
    out.reserve(cells.size() + 1);
    for (const Cell& cell : cells) {
      if (std::find(cell.begin(), cell.end(), v) == cell.end()) {
        out.push_back(cell);
        continue;
      }
      out.push_back({v});
      Cell rest;
      for (Vertex u : cell) {
        if (u != v) rest.push_back(u);
      }
      if (!rest.empty()) out.push_back(std::move(rest));
    }
    refine(out);
    return out;
  }

  // True when some automorphism maps the ordered partition `a` onto `b`
  // cell by cell.
  bool extends(const Partition& a, const Partition& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != b[i].size()) return false;
    }
    if (quotient(a) != quotient(b)) return false;
    if (a.size() == static_cast<std::size_t>(g_.vertex_count())) {
      std::vector<Vertex> map(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        map[static_cast<std::size_t>(a[i].front())] = b[i].front();
      }
      for (const auto& [u, v] : g_.edges()) {
        if (!g_.has_edge(map[static_cast<std::size_t>(u)], map[static_cast<std::size_t>(v)])) {
          return false;
        }
      }
      return true;
    }
    const std::size_t target = first_nonsingleton(a);
    const Partition a_next = individualize(a, a[target].front());
    for (Vertex w : b[target]) {
      if (extends(a_next, individualize(b, w))) return true;
    }
    return false;
  }

  static std::size_t first_nonsingleton(const Partition& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() > 1) return i;
    }
    return cells.size();
  }

 private:
  const Graph& g_;
  std::vector<std::vector<Vertex>> neighbors_;
};

class LeafSearch {
 public:
  explicit LeafSearch(const Refiner& refiner) : refiner_(refiner) {}

  void run(const Partition& cells) {
    const std::size_t target = Refiner::first_nonsingleton(cells);
    if (target == cells.size()) {
      visit_leaf(cells);
      return;
    }
    std::vector<Partition> explored;
    for (Vertex w : cells[target]) {
      Partition child = refiner_.individualize(cells, w);
      bool equivalent = false;
      for (const Partition& prior : explored) {
        if (refiner_.extends(prior, child)) {
          equivalent = true;
          break;
        }
      }
      if (equivalent) continue;
      run(child);
      explored.push_back(std::move(child));
    }
  }

  std::vector<Edge> best_edges;
  std::vector<int> best_labeling;
  bool found = false;

 private:
  void visit_leaf(const Partition& cells) {
    const Graph& g = refiner_.graph();
    std::vector<int> label(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      label[static_cast<std::size_t>(cells[i].front())] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const auto& [u, v] : g.edges()) {
      int a = label[static_cast<std::size_t>(u)];
      int b = label[static_cast<std::size_t>(v)];
      if (a > b) std::swap(a, b);
      edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (!found || edges < best_edges) {
      best_edges = std::move(edges);
      best_labeling = std::move(label);
      found = true;
    }
  }

  const Refiner& refiner_;
};

}  // namespace

std::vector<ChainLevel> stabilizer_chain(const Graph& g) {
  Refiner refiner(g);
  std::vector<ChainLevel> chain;
  Partition cells = refiner.initial();
  while (true) {
    const std::size_t target = Refiner::first_nonsingleton(cells);
    if (target == cells.size()) break;
    const Vertex base = cells[target].front();
    const Partition fixed = refiner.individualize(cells, base);
    ChainLevel level{base, {base}};
    for (std::size_t i = 1; i < cells[target].size(); ++i) {
      const Vertex w = cells[target][i];
      if (refiner.extends(fixed, refiner.individualize(cells, w))) level.orbit.push_back(w);
    }
    std::sort(level.orbit.begin(), level.orbit.end());
    chain.push_back(std::move(level));
    cells = fixed;
  }
  return chain;
}

namespace {

std::vector<std::vector<Vertex>> components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<Vertex> members{s};
    comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int u = 0; u < n; ++u) {
        if (comp[static_cast<std::size_t>(u)] < 0 && g.has_edge(members[i], u)) {
          comp[static_cast<std::size_t>(u)] = static_cast<int>(out.size());
          members.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Graph component_graph(const Graph& g, const std::vector<Vertex>& members) {
  std::vector<int> rename(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < members.size(); ++i) rename[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (rename[static_cast<std::size_t>(u)] >= 0) {
      edges.emplace_back(rename[static_cast<std::size_t>(u)], rename[static_cast<std::size_t>(v)]);
    }
  }
  return Graph(static_cast<int>(members.size()), std::move(edges));
}

BigInt chain_order(const Graph& g) {
  BigInt order = 1;
  for (const ChainLevel& level : stabilizer_chain(g)) order *= level.orbit.size();
  return order;
}

}  // namespace

BigInt automorphism_order(const Graph& g) {
  const auto comps = components(g);
  if (comps.size() <= 1) return chain_order(g);
  // |Aut| = prod over isomorphism classes of components of k! |Aut C|^k.
  std::map<CanonicalForm, std::pair<BigInt, int>> classes;
  for (const auto& members : comps) {
    const Graph c = component_graph(g, members);
    CanonicalForm form = canonical_form(c);
    auto it = classes.find(form);
    if (it == classes.end()) {
      BigInt aut = form.automorphism_order;
      classes.emplace(std::move(form), std::make_pair(std::move(aut), 1));
    } else {
      ++it->second.second;
    }
  }
  BigInt order = 1;
  for (const auto& [form, entry] : classes) {
    for (int i = 1; i <= entry.second; ++i) order *= entry.first * i;
  }
  return order;
}

BigInt automorphism_order_bound(const Graph& g) {
  // Per component, automorphisms preserve the cells of the equitable
  // partition, so |Aut C| <= prod |cell|!. Isomorphic components share
  // (size, edges, sorted degrees), so grouping by that key over-counts the
  // permutations of components.
  std::map<std::pair<std::vector<int>, int>, int> groups;
  BigInt bound = 1;
  for (const auto& members : components(g)) {
    const Graph c = component_graph(g, members);
    Refiner refiner(c);
    for (const Cell& cell : refiner.initial()) bound *= factorial(cell.size());
    std::vector<int> degrees;
    for (int v = 0; v < c.vertex_count(); ++v) degrees.push_back(c.degree(v));
    std::sort(degrees.begin(), degrees.end());
    const int k = ++groups[{std::move(degrees), c.edge_count()}];
    bound *= k;
  }
  return bound;
}

CanonicalLabeling canonical_labeling(const Graph& g) {
  CanonicalLabeling result;
  result.form.vertex_count = g.vertex_count();
  result.form.automorphism_order = automorphism_order(g);
  if (g.vertex_count() == 0) return result;
  Refiner refiner(g);
  LeafSearch search(refiner);
  search.run(refiner.initial());
  result.form.edges = std::move(search.best_edges);
  result.labeling = std::move(search.best_labeling);
  return result;
}

CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace planted

#include "planted/thresholds.hpp"

#include "planted/errors.hpp"
#include "planted/subsets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace planted {

int min_edges_for(const Graph& h, const Rational& q) {
  if (q < 0 || q > 1) throw std::invalid_argument("q must lie in [0, 1]");
  const BigInt need = ceil_rational(q * h.edge_count());
  return std::max(1, need.convert_to<int>());
}

long double log_copy_count(const Graph& j, const BigInt& n) {
  if (BigInt(j.vertex_count()) > n) throw std::invalid_argument("pattern has more vertices than n");
  return log_falling_factorial(n, static_cast<std::uint64_t>(j.vertex_count())) -
         log_big(automorphism_order(j));
}

long double log_p1m(const Graph& j, const BigInt& n) {
  if (j.edge_count() == 0) throw std::invalid_argument("p1M undefined for an edgeless graph");
  return -log_copy_count(j, n) / static_cast<long double>(j.edge_count());
}

long double p1m(const Graph& j, const BigInt& n) { return std::exp(log_p1m(j, n)); }

namespace {

// A scored subgraph; lambda = log(M_J) / e(J) = -log p1M(J).
struct Scored {
  long double lambda = 0;
  int vertices = 0;
  int edges = 0;
  BigInt aut;
  Graph graph;
  std::optional<CanonicalForm> form;

  const CanonicalForm& canonical() {
    if (!form) form = canonical_form(graph);
    return *form;
  }
};

// Sign of lambda(a) - lambda(b), decided exactly: compare
// M_a^{e_b} with M_b^{e_a}, M = (n)_v / aut.
int exact_compare(const Scored& a, const Scored& b, const BigInt& n) {
  if (a.vertices == b.vertices && a.edges == b.edges && a.aut == b.aut) return 0;
  using boost::multiprecision::pow;
  const BigInt lhs = pow(falling_factorial(n, static_cast<std::uint64_t>(a.vertices)),
                         static_cast<unsigned>(b.edges)) *
                     pow(b.aut, static_cast<unsigned>(a.edges));
  const BigInt rhs = pow(falling_factorial(n, static_cast<std::uint64_t>(b.vertices)),
                         static_cast<unsigned>(a.edges)) *
                     pow(a.aut, static_cast<unsigned>(b.edges));
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

long double slack(long double lambda) { return 1e-12L * std::max(1.0L, std::fabs(lambda)); }

// Next r-combination of {0..m-1} in lexicographic order.
bool next_combination(std::vector<int>& idx, int m) {
  const int r = static_cast<int>(idx.size());
  int i = r - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

PsiResult psi_q(const Graph& h, const BigInt& n, const Rational& q, const SearchLimits& limits) {
  if (h.edge_count() == 0) throw std::invalid_argument("psi_q needs at least one edge");
  if (BigInt(h.vertex_count()) > n) throw std::invalid_argument("pattern has more vertices than n");
  if (h.vertex_count() > limits.max_vertices) {
    throw BudgetExceeded("psi search limited to " + std::to_string(limits.max_vertices) +
                         " vertices");
  }
  const int m = min_edges_for(h, q);
  const int v_h = h.vertex_count();

  std::vector<long double> log_ff(static_cast<std::size_t>(v_h) + 1);
  std::vector<long double> log_binom(static_cast<std::size_t>(v_h) + 1);
  for (int w = 0; w <= v_h; ++w) {
    log_ff[static_cast<std::size_t>(w)] = log_falling_factorial(n, static_cast<std::uint64_t>(w));
    log_binom[static_cast<std::size_t>(w)] =
        log_ff[static_cast<std::size_t>(w)] - std::lgamma(static_cast<long double>(w) + 1.0L);
  }

  std::uint64_t scored_count = 0;
  std::uint64_t visited_subsets = 0;
  auto score = [&](Graph j) {
    if (++scored_count > limits.max_candidates) {
      throw BudgetExceeded("psi search exceeded " + std::to_string(limits.max_candidates) +
                           " candidate subgraphs");
    }
    Scored s;
    s.vertices = j.vertex_count();
    s.edges = j.edge_count();
    s.aut = automorphism_order(j);
    s.lambda = (log_ff[static_cast<std::size_t>(s.vertices)] - log_big(s.aut)) /
               static_cast<long double>(s.edges);
    s.graph = std::move(j);
    return s;
  };

  // Seed with H itself (always feasible).
  std::vector<int> all_edges(static_cast<std::size_t>(h.edge_count()));
  for (int i = 0; i < h.edge_count(); ++i) all_edges[static_cast<std::size_t>(i)] = i;
  Scored best = score(h.edge_subgraph(all_edges));

  auto consider = [&](Scored cand) {
    const long double tol = slack(best.lambda);
    if (cand.lambda > best.lambda + tol) return;
    if (cand.lambda < best.lambda - tol) {
      best = std::move(cand);
      return;
    }
    const int c = exact_compare(cand, best, n);
    if (c < 0 || (c == 0 && cand.canonical() < best.canonical())) best = std::move(cand);
  };

  // Candidate supports: every W spanned by >= m induced edges, with the
  // bound log C(n,|W|) / e(H[W]) <= lambda(J) for any J on W.
  const auto adj = adjacency_masks(h);
  struct Support {
    long double bound;
    std::uint64_t mask;
    int edges;
  };
  std::vector<Support> supports;
  const long double cutoff = best.lambda + slack(best.lambda);
  for_each_vertex_subset(
      h,
      [&](std::uint64_t mask, int w, int e) {
        if (e < m || w < 2) return;
        const long double bound = log_binom[static_cast<std::size_t>(w)] / static_cast<long double>(e);
        if (bound > cutoff) return;
        if (!spans_without_isolated(adj, mask)) return;
        supports.push_back({bound, mask, e});
      },
      limits.max_vertices);
  std::sort(supports.begin(), supports.end(), [](const Support& a, const Support& b) {
    return a.bound != b.bound ? a.bound < b.bound : a.mask < b.mask;
  });

  std::vector<int> local;  // edge indices of H[W]
  std::vector<int> degree(static_cast<std::size_t>(v_h));
  std::vector<int> kept;
  for (const Support& s : supports) {
    if (s.bound > best.lambda + slack(best.lambda)) break;
    const int w = std::popcount(s.mask);
    local.clear();
    for (int i = 0; i < h.edge_count(); ++i) {
      const auto& [a, b] = h.edges()[static_cast<std::size_t>(i)];
      if (((s.mask >> a) & 1U) && ((s.mask >> b) & 1U)) local.push_back(i);
    }
    const int total = static_cast<int>(local.size());
    for (int e = total; e >= m; --e) {
      const long double floor_lambda = log_binom[static_cast<std::size_t>(w)] / static_cast<long double>(e);
      if (floor_lambda > best.lambda + slack(best.lambda)) break;
      // Drop `total - e` edges, keeping every vertex of W covered.
      std::vector<int> drop(static_cast<std::size_t>(total - e));
      for (std::size_t i = 0; i < drop.size(); ++i) drop[i] = static_cast<int>(i);
      do {
        std::fill(degree.begin(), degree.end(), 0);
        kept.clear();
        std::size_t d = 0;
        for (int i = 0; i < total; ++i) {
          if (d < drop.size() && drop[d] == i) {
            ++d;
            continue;
          }
          const int idx = local[static_cast<std::size_t>(i)];
          kept.push_back(idx);
          ++degree[static_cast<std::size_t>(h.edges()[static_cast<std::size_t>(idx)].first)];
          ++degree[static_cast<std::size_t>(h.edges()[static_cast<std::size_t>(idx)].second)];
        }
        bool covers = true;
        for (std::uint64_t rest = s.mask; rest != 0; rest &= rest - 1) {
          if (degree[static_cast<std::size_t>(std::countr_zero(rest))] == 0) {
            covers = false;
            break;
          }
        }
        if (++visited_subsets > limits.max_subsets) {
          throw BudgetExceeded("psi search exceeded " + std::to_string(limits.max_subsets) +
                               " edge subsets");
        }
        if (covers) {
          Graph j = h.edge_subgraph(kept);
          const long double floor_j =
              (log_ff[static_cast<std::size_t>(w)] - log_big(automorphism_order_bound(j))) /
              static_cast<long double>(e);
          if (floor_j <= best.lambda + slack(best.lambda)) consider(score(std::move(j)));
        }
      } while (!drop.empty() && next_combination(drop, total));
    }
  }

  PsiResult result;
  result.q = q;
  result.min_edges = m;
  result.log_psi = -best.lambda;
  result.psi = std::exp(result.log_psi);
  result.witness = best.canonical();
  result.candidates = scored_count;
  return result;
}

long double expectation_threshold(const Graph& h, const BigInt& n, const SearchLimits& limits) {
  return psi_q(h, n, Rational(0), limits).psi;
}

long double lambda_q(const Graph& h, const BigInt& n, const Rational& q, const SearchLimits& limits) {
  return -psi_q(h, n, q, limits).log_psi;
}

AlphaResult alpha_q(const Graph& h, const Rational& q, const SearchLimits& limits) {
  if (h.edge_count() == 0) throw std::invalid_argument("alpha_q needs at least one edge");
  const int m = min_edges_for(h, q);
  std::uint64_t best_mask = 0;
  int best_w = 0;
  int best_e = 0;
  for_each_vertex_subset(
      h,
      [&](std::uint64_t mask, int w, int e) {
        if (e < m) return;
        if (best_mask == 0) {
          best_mask = mask;
          best_w = w;
          best_e = e;
          return;
        }
        // w/e < best_w/best_e, then smaller |W|, then lexicographic.
        const long long lhs = static_cast<long long>(w) * best_e;
        const long long rhs = static_cast<long long>(best_w) * e;
        const bool better = lhs < rhs ||
                            (lhs == rhs && (w < best_w || (w == best_w && lex_less_same_size(mask, best_mask))));
        if (better) {
          best_mask = mask;
          best_w = w;
          best_e = e;
        }
      },
      limits.max_vertices);
  AlphaResult result;
  result.q = q;
  result.min_edges = m;
  result.alpha = Rational(best_w, best_e);
  result.witness = mask_to_vertices(best_mask);
  return result;
}

long double log_dense_approx_p1m(const Graph& h, const BigInt& n) {
  if (h.edge_count() == 0) throw std::invalid_argument("dense approximation needs edges");
  return -static_cast<long double>(h.vertex_count()) / static_cast<long double>(h.edge_count()) *
         log_big(n);
}

long double dense_approx_p1m(const Graph& h, const BigInt& n) {
  return std::exp(log_dense_approx_p1m(h, n));
}

ThresholdCurve threshold_curve(const Graph& h, const BigInt& n, const std::vector<Rational>& q_grid,
                               const SearchLimits& limits, bool alpha_only) {
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    if (q_grid[i] < 0 || q_grid[i] > 1) throw std::invalid_argument("q grid must lie in [0, 1]");
    if (i > 0 && q_grid[i] < q_grid[i - 1]) throw std::invalid_argument("q grid must be sorted");
  }
  ThresholdCurve curve;
  curve.n = n;
  curve.log_p1m_h = log_p1m(h, n);
  const long double log_n = log_big(n);
  bool psi_ok = !alpha_only;
  if (alpha_only) curve.psi_error = "psi search skipped (alpha only)";
  if (psi_ok) {
    try {
      curve.log_p_e = psi_q(h, n, Rational(0), limits).log_psi;
    } catch (const BudgetExceeded& e) {
      psi_ok = false;
      curve.psi_error = e.what();
    }
  }
  for (const Rational& q : q_grid) {
    CurvePoint point;
    point.q = q;
    point.alpha = alpha_q(h, q, limits);
    point.log_surrogate = -to_long_double(point.alpha.alpha) * log_n;
    if (psi_ok) {
      try {
        point.psi = psi_q(h, n, q, limits);
      } catch (const BudgetExceeded& e) {
        psi_ok = false;
        curve.psi_error = e.what();
      }
    }
    curve.points.push_back(std::move(point));
  }
  if (!psi_ok) {
    curve.log_p_e.reset();
    for (auto& point : curve.points) point.psi.reset();
  }
  return curve;
}

}  // namespace planted

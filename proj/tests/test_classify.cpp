#include "planted/canonical.hpp"
#include "planted/classify.hpp"
#include "planted/copies.hpp"
#include "planted/errors.hpp"
#include "planted/graph.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <optional>
#include <set>

using namespace planted;

namespace {

std::vector<Graph> corpus() {
  return {families::clique(3),           families::clique(4),
          families::cycle(4),            families::cycle(5),
          families::path(3),             families::perfect_matching(4),
          families::perfect_matching(6), families::sun(4),
          families::cycle_with_out_edges(4), families::path(5)};
}

int covered_vertices(const Graph& h, std::uint64_t edge_mask) {
  std::set<Vertex> seen;
  for (int i = 0; i < h.edge_count(); ++i) {
    if ((edge_mask >> i) & 1U) {
      seen.insert(h.edges()[static_cast<std::size_t>(i)].first);
      seen.insert(h.edges()[static_cast<std::size_t>(i)].second);
    }
  }
  return static_cast<int>(seen.size());
}

// Strong balance straight from the definition, over every edge subset.
bool raw_strongly_balanced(const Graph& h, const Rational& c) {
  const Rational rhs = Rational(h.edge_count()) / (Rational(h.vertex_count()) - c);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << h.edge_count()); ++mask) {
    const Rational lhs = Rational(std::popcount(mask)) / (Rational(covered_vertices(h, mask)) - c);
    if (lhs > rhs) return false;
  }
  return true;
}

std::optional<Rational> raw_max_c(const Graph& h) {
  const int e_h = h.edge_count();
  const int v_h = h.vertex_count();
  Rational best(2);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e_h); ++mask) {
    const int e = std::popcount(mask);
    const int v = covered_vertices(h, mask);
    if (e == e_h) {
      if (v < v_h) return std::nullopt;
      continue;
    }
    best = std::min(best, Rational(e_h * v - e * v_h, e_h - e));
  }
  if (best <= 0) return std::nullopt;
  return best;
}

// pbar from the law of a uniform copy S of H in K_n: tally every edge set A
// with |A| >= m inside each copy.
long double brute_spread(const Graph& h, int n, const Rational& delta) {
  const auto copies = enumerate_copies(h, families::clique(n));
  const int m = min_edges_for(h, delta);
  std::map<std::vector<Edge>, int> hits;
  for (const auto& copy : copies) {
    const int e = static_cast<int>(copy.size());
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); ++mask) {
      if (std::popcount(mask) < m) continue;
      std::vector<Edge> a;
      for (int i = 0; i < e; ++i) {
        if ((mask >> i) & 1U) a.push_back(copy[static_cast<std::size_t>(i)]);
      }
      ++hits[a];
    }
  }
  long double best = 0;
  for (const auto& [a, count] : hits) {
    const long double prob = static_cast<long double>(count) / static_cast<long double>(copies.size());
    best = std::max(best, std::pow(prob, 1.0L / static_cast<long double>(a.size())));
  }
  return best;
}

// lambda over subgraphs with at least m edges, by listing edge subsets.
long double raw_lambda_at_least(const Graph& h, const BigInt& n, int m) {
  const int e = h.edge_count();
  long double best = INFINITY;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); ++mask) {
    if (std::popcount(mask) < m) continue;
    std::vector<int> idx;
    for (int i = 0; i < e; ++i) {
      if ((mask >> i) & 1U) idx.push_back(i);
    }
    const Graph j = h.edge_subgraph(idx);
    const long double lambda =
        (log_falling_factorial(n, static_cast<std::uint64_t>(j.vertex_count())) -
         log_big(automorphism_order(j))) /
        static_cast<long double>(j.edge_count());
    best = std::min(best, lambda);
  }
  return best;
}

}  // namespace

TEST(Balance, Examples) {
  EXPECT_TRUE(is_balanced(families::clique(5)).holds);
  EXPECT_TRUE(is_balanced(families::cycle(7)).holds);
  const BalanceResult sun = is_balanced(families::sun(5));
  EXPECT_FALSE(sun.holds);
  EXPECT_EQ(sun.witness, (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_EQ(sun.density_ratio, Rational(4, 3));
}

TEST(StrongBalance, Examples) {
  EXPECT_TRUE(is_strongly_balanced(families::cycle(4), 1).holds);
  EXPECT_TRUE(is_strongly_balanced(families::cycle(5), 1).holds);
  EXPECT_TRUE(is_strongly_balanced(families::path(4), 1).holds);
  EXPECT_TRUE(is_strongly_balanced(families::clique(4), 1).holds);
  const StrongBalanceResult co = is_strongly_balanced(families::cycle_with_out_edges(4), 1);
  EXPECT_FALSE(co.holds);
  EXPECT_EQ(co.witness, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_THROW(is_strongly_balanced(families::cycle(4), 2), std::invalid_argument);
  EXPECT_THROW(is_strongly_balanced(families::cycle(4), 0), std::invalid_argument);
}

TEST(StrongBalance, MaxC) {
  EXPECT_EQ(max_strongly_balanced_c(families::path(3)), Rational(1));
  EXPECT_TRUE(is_strongly_balanced(families::path(3), 1).holds);
  EXPECT_FALSE(is_strongly_balanced(families::path(3), Rational(11, 10)).holds);
  for (int k = 3; k <= 7; ++k) EXPECT_FALSE(max_strongly_balanced_c(families::cycle_with_out_edges(k)));
  const auto k3 = max_strongly_balanced_c(families::clique(3));
  ASSERT_TRUE(k3);
  EXPECT_GE(*k3, 1);
  EXPECT_EQ(max_strongly_balanced_c(families::cycle(5)), Rational(5, 4));
}

TEST(StrongBalance, AgreesWithEdgeSubsetScan) {
  for (const Graph& h : corpus()) {
    const auto got = max_strongly_balanced_c(h);
    EXPECT_EQ(got, raw_max_c(h)) << to_edge_list(h);
    for (const Rational c : {Rational(1, 3), Rational(1, 2), Rational(1), Rational(5, 4), Rational(3, 2),
                             Rational(19, 10)}) {
      EXPECT_EQ(is_strongly_balanced(h, c).holds, raw_strongly_balanced(h, c)) << to_edge_list(h) << " c=" << c;
      if (got) EXPECT_EQ(is_strongly_balanced(h, c).holds, c <= *got);
    }
  }
}

TEST(StrongBalance, ImpliesBalanced) {
  std::vector<Graph> graphs = corpus();
  graphs.push_back(families::sun(5));
  graphs.push_back(families::clique(6));
  for (const Graph& h : graphs) {
    for (const Rational c : {Rational(1, 2), Rational(1), Rational(3, 2)}) {
      if (is_strongly_balanced(h, c).holds) EXPECT_TRUE(is_balanced(h).holds) << to_edge_list(h);
    }
  }
}

TEST(Dense, Diagnostic) {
  EXPECT_NEAR(dense_diagnostic(families::clique(20)), 190.0L / (20 * std::log(20.0L)), 1e-12);
  EXPECT_NEAR(dense_diagnostic(families::clique(20)), 3.17, 0.01);
  EXPECT_NEAR(dense_diagnostic(families::perfect_matching(100)), 0.109, 0.001);
  EXPECT_NEAR(dense_diagnostic(families::cycle(10)), 0.434, 0.001);
}

TEST(Delocalization, Examples) {
  const DelocalizationResult sun = is_delocalized(families::sun(5), 100);
  EXPECT_TRUE(sun.holds);
  // K5 carries 10 of the 15 edges, so it is admissible at q = 1/2.
  EXPECT_EQ(sun.alpha_0, Rational(1, 2));
  EXPECT_EQ(sun.alpha_q, Rational(1, 2));
  const DelocalizationResult k = is_delocalized(families::clique(7), 1000);
  EXPECT_TRUE(k.holds);
  EXPECT_EQ(k.gap, 0);
  const std::vector<int> sizes{8, 4, 4, 4, 4};
  const DelocalizationResult dc = is_delocalized(families::disjoint_cliques(sizes), 1000000);
  EXPECT_TRUE(dc.holds);
  EXPECT_EQ(dc.alpha_0, Rational(2, 7));
}

TEST(AlmostBalanced, BalancedGraphWithinCountSlack) {
  // psi_q <= max over admissible J of C(n, v_J)^{-1/e_J} and psi_{q'} >= p1M(H).
  const Graph h = families::clique(10);
  const BigInt n = 1000;
  for (const auto& [q, q2] : std::vector<std::pair<Rational, Rational>>{
           {Rational(1, 10), Rational(9, 10)}, {Rational(1, 2), Rational(3, 4)}}) {
    const int m = min_edges_for(h, q);
    long double log_upper = -INFINITY;
    for (int w = 2; w <= 10; ++w) {
      const int e = w * (w - 1) / 2;
      if (e < m) continue;
      log_upper = std::max(log_upper, -log_big(binomial(n, static_cast<std::uint64_t>(w))) / e);
    }
    const long double slack = std::exp(log_upper - log_p1m(h, n));
    const long double gap = almost_balanced_gap(h, n, q, q2);
    EXPECT_GE(gap, 1.0L - 1e-12L);
    EXPECT_LE(gap, slack * (1 + 1e-12L));
  }
  EXPECT_THROW(almost_balanced_gap(h, n, Rational(1, 2), Rational(1, 4)), std::invalid_argument);
}

TEST(AlmostBalanced, DisjointCliquesDrift) {
  const std::vector<int> sizes{8, 4, 4, 4, 4};
  const long double gap =
      almost_balanced_gap(families::disjoint_cliques(sizes), 1000, Rational(1, 10), Rational(9, 10));
  EXPECT_GT(gap, 1.1L);
}

TEST(FirstMoment, CycleIsFlat) {
  const long double gap = first_moment_flat_gap(families::cycle(10), 10000, Rational(1, 10), Rational(9, 10));
  EXPECT_GE(gap, 1.0L);
  EXPECT_LE(gap, 1.2L);
}

TEST(FirstMoment, TwoCliquesNotFlat) {
  const std::vector<int> sizes{12, 4};
  const Graph h = families::disjoint_cliques(sizes);
  const long double gap = first_moment_flat_gap(h, 1000000, Rational(1, 20), Rational(19, 20));
  EXPECT_GT(gap, 1.1L);
}

TEST(FirstMoment, StableGapMatchesSubsetScan) {
  for (const auto& [h, n] : std::vector<std::pair<Graph, BigInt>>{{families::sun(6), BigInt(1000000)},
                                                                   {families::cycle_with_out_edges(5), BigInt(1000)},
                                                                   {families::clique(5), BigInt(100)}}) {
    const Rational delta(1, 10);
    const StableGap s = first_moment_stable_gap(h, n, delta);
    const int m = min_edges_for(h, Rational(1) - delta);
    const long double expected = raw_lambda_at_least(h, n, m) / raw_lambda_at_least(h, n, h.edge_count());
    EXPECT_NEAR(s.gap, expected, 1e-9L) << to_edge_list(h);
    EXPECT_LE(s.gap, 1.0L + 1e-12L);

    // log M_{H|J} / log M_H over J with exactly m edges, M_{J,H} by pairwise
    // isomorphism tests.
    ASSERT_TRUE(s.extension_ratio);
    std::vector<Graph> subs;
    const int e = h.edge_count();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); ++mask) {
      if (std::popcount(mask) != m) continue;
      std::vector<int> idx;
      for (int i = 0; i < e; ++i) {
        if ((mask >> i) & 1U) idx.push_back(i);
      }
      subs.push_back(h.edge_subgraph(idx));
    }
    const long double log_m_h = log_copy_count(h, n);
    long double best = -INFINITY;
    for (const Graph& j : subs) {
      int same = 0;
      for (const Graph& other : subs) same += are_isomorphic(j, other) ? 1 : 0;
      best = std::max(best, (log_m_h + std::log(static_cast<long double>(same)) - log_copy_count(j, n)) / log_m_h);
    }
    EXPECT_NEAR(*s.extension_ratio, best, 1e-9L) << to_edge_list(h);
  }
}

TEST(Spread, Examples) {
  EXPECT_NEAR(spread_certificate(families::perfect_matching(4), 4, Rational(1, 2)).pbar, std::sqrt(1.0L / 3),
              1e-12L);
  EXPECT_NEAR(spread_certificate(families::clique(3), 5, Rational(1)).pbar, std::cbrt(0.1L), 1e-12L);
  EXPECT_NEAR(nothing_regime_bound(families::clique(3), 5, Rational(1)), 3 * std::cbrt(0.1L), 1e-12L);
  EXPECT_NEAR(nothing_regime_bound(families::perfect_matching(4), 4, Rational(1, 2)), 6 * std::sqrt(1.0L / 3),
              1e-12L);
  EXPECT_NEAR(nothing_regime_bound(families::cycle(4), 6, Rational(1)),
              3 * p1m(families::cycle(4), 6), 1e-12L);
}

TEST(Spread, MatchesCopyLaw) {
  const std::vector<std::pair<Graph, int>> cases{{families::perfect_matching(4), 4}, {families::clique(3), 5},
                                                 {families::cycle(4), 6},            {families::path(4), 5},
                                                 {families::perfect_matching(4), 6}, {families::clique(4), 5}};
  for (const auto& [h, n] : cases) {
    for (const Rational delta : {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
      EXPECT_NEAR(spread_certificate(h, n, delta).pbar, brute_spread(h, n, delta), 1e-12L)
          << to_edge_list(h) << " n=" << n << " delta=" << delta;
    }
  }
}

TEST(Spread, Invariants) {
  for (const Graph& h : corpus()) {
    const BigInt n = 12;
    long double previous = INFINITY;
    for (const Rational delta : {Rational(1, 10), Rational(1, 3), Rational(1, 2), Rational(4, 5), Rational(1)}) {
      const long double pbar = spread_certificate(h, n, delta).pbar;
      EXPECT_GE(pbar, p1m(h, n) * (1 - 1e-12L));
      EXPECT_LE(pbar, previous * (1 + 1e-12L));
      previous = pbar;
    }
    EXPECT_NEAR(spread_certificate(h, n, Rational(1)).pbar, p1m(h, n), 1e-12L);
  }
}

TEST(Verdict, CycleSizeBound) {
  const ClassificationReport big = aon_verdict(families::cycle(5), boost::multiprecision::pow(BigInt(10), 60));
  EXPECT_EQ(big.verdict.regime, AonRegime::kLinear);
  EXPECT_EQ(big.verdict.route, "sparse-strongly-balanced");
  ASSERT_TRUE(big.verdict.log_predicted_threshold);
  EXPECT_NEAR(*big.verdict.log_predicted_threshold, log_p1m(families::cycle(5), big.n), 1e-9L);

  // v + e = 10 exceeds (5/4) log n / (3 log log n) ~ 2.19 at n = 10^6.
  const ClassificationReport mid = aon_verdict(families::cycle(5), 1000000);
  const ConditionEntry* size = mid.find("sparse-size");
  ASSERT_NE(size, nullptr);
  EXPECT_EQ(size->holds, false);
  EXPECT_EQ(mid.find("strongly-balanced")->holds, true);
  EXPECT_EQ(mid.verdict.regime, AonRegime::kExponential);
}

TEST(Verdict, CycleWithOutEdges) {
  const ClassificationReport r = aon_verdict(families::cycle_with_out_edges(6), 1000000);
  EXPECT_EQ(r.find("strongly-balanced")->holds, false);
  EXPECT_EQ(r.verdict.regime, AonRegime::kExponential);
  EXPECT_EQ(r.verdict.route, "exponential-flat-stable");
  ASSERT_TRUE(r.verdict.log_predicted_threshold);
  EXPECT_NEAR(*r.verdict.log_predicted_threshold, r.log_p1m, 1e-12L);
}

TEST(Verdict, TwoCliques) {
  const std::vector<int> sizes{12, 4};
  const ClassificationReport r = aon_verdict(families::disjoint_cliques(sizes), 1000000);
  EXPECT_EQ(r.verdict.regime, AonRegime::kNoneDetected);
  const ConditionEntry* flat = r.find("first-moment-flat");
  ASSERT_NE(flat, nullptr);
  EXPECT_EQ(flat->holds, false);
  ASSERT_TRUE(flat->gap);
  EXPECT_GT(*flat->gap, 1.1L);
  EXPECT_FALSE(r.verdict.failing_conditions.empty());
  EXPECT_EQ(r.verdict.failing_conditions.front(), "first-moment-flat");
}

TEST(Verdict, EveryEntryNamesItsOperation) {
  const ClassificationReport r = aon_verdict(families::clique(6), 1000);
  EXPECT_FALSE(r.conditions.empty());
  for (const ConditionEntry& c : r.conditions) {
    EXPECT_FALSE(c.name.empty());
    EXPECT_FALSE(c.operation.empty());
  }
}

TEST(Verdict, Deterministic) {
  for (const Graph& h : {families::sun(4), families::cycle(6), families::path(4)}) {
    const ClassificationReport a = aon_verdict(h, 5000);
    const ClassificationReport b = aon_verdict(h, 5000);
    ASSERT_EQ(a.conditions.size(), b.conditions.size());
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
      EXPECT_EQ(a.conditions[i].name, b.conditions[i].name);
      EXPECT_EQ(a.conditions[i].holds, b.conditions[i].holds);
      EXPECT_EQ(a.conditions[i].gap, b.conditions[i].gap);
      EXPECT_EQ(a.conditions[i].certificate, b.conditions[i].certificate);
    }
    EXPECT_EQ(a.verdict.regime, b.verdict.regime);
    EXPECT_EQ(a.verdict.failing_conditions, b.verdict.failing_conditions);
  }
}

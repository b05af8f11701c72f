#include "planted/canonical.hpp"
#include "planted/copies.hpp"
#include "planted/errors.hpp"
#include "planted/thresholds.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace planted;

namespace {

struct RawBest {
  long double log_psi;
  int edges;
};

// psi_q by brute force over all 2^e(H) edge subsets, with no dedupe and no
// pruning.
RawBest raw_psi(const Graph& h, const BigInt& n, const Rational& q) {
  const int e = h.edge_count();
  const int m = std::max(1, ceil_rational(q * e).convert_to<int>());
  RawBest best{-1e300L, 0};
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); ++mask) {
    if (std::popcount(mask) < m) continue;
    std::vector<int> chosen;
    for (int i = 0; i < e; ++i) {
      if ((mask >> i) & 1U) chosen.push_back(i);
    }
    const Graph j = h.edge_subgraph(chosen);
    const BigInt copies = falling_factorial(n, static_cast<std::uint64_t>(j.vertex_count())) /
                          automorphism_order(j);
    const long double lp = -log_big(copies) / j.edge_count();
    if (lp > best.log_psi) best = {lp, j.edge_count()};
  }
  return best;
}

// alpha_q by brute force over all edge subsets (not just induced ones).
Rational raw_alpha(const Graph& h, const Rational& q) {
  const int e = h.edge_count();
  const int m = std::max(1, ceil_rational(q * e).convert_to<int>());
  Rational best = 1000;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); ++mask) {
    if (std::popcount(mask) < m) continue;
    std::vector<int> chosen;
    for (int i = 0; i < e; ++i) {
      if ((mask >> i) & 1U) chosen.push_back(i);
    }
    const Graph j = h.edge_subgraph(chosen);
    best = std::min(best, Rational(j.vertex_count(), j.edge_count()));
  }
  return best;
}

std::vector<Rational> grid() {
  return {Rational(0), Rational(1, 10), Rational(1, 3), Rational(1, 2), Rational(2, 3),
          Rational(9, 10), Rational(1)};
}

Graph sun5() { return families::sun(5); }

}  // namespace

TEST(P1m, Examples) {
  EXPECT_NEAR(static_cast<double>(p1m(families::clique(2), 10)), 1.0 / 45, 1e-15);
  EXPECT_NEAR(static_cast<double>(p1m(families::clique(5), 20)), std::pow(15504.0, -0.1), 1e-14);
  EXPECT_NEAR(static_cast<double>(p1m(families::clique(5), 20)), 0.38103, 5e-6);
  EXPECT_NEAR(static_cast<double>(p1m(families::perfect_matching(8), 8)), std::pow(105.0, -0.25),
              1e-14);
  EXPECT_NEAR(static_cast<double>(p1m(families::perfect_matching(8), 8)), 0.312394, 5e-7);
  EXPECT_THROW(p1m(Graph(3, {}), 10), std::invalid_argument);
}

TEST(P1m, HugeN) {
  // n = 10^60: log M_{K3} = log C(n,3) = 3 log n - log 6 + O(1/n).
  BigInt n = boost::multiprecision::pow(BigInt(10), 60);
  const long double expect = -(3 * 60 * std::log(10.0L) - std::log(6.0L)) / 3;
  EXPECT_NEAR(static_cast<double>(log_p1m(families::clique(3), n)), static_cast<double>(expect), 1e-12);
}

TEST(Psi, MatchingMaximumAtFullMatching) {
  const Graph h = families::perfect_matching(8);
  for (const Rational& q : grid()) {
    const PsiResult r = psi_q(h, 8, q);
    EXPECT_NEAR(static_cast<double>(r.psi), std::pow(105.0, -0.25), 1e-14);
    EXPECT_EQ(r.witness, canonical_form(h));
  }
  EXPECT_NEAR(static_cast<double>(expectation_threshold(h, 8)), std::pow(105.0, -0.25), 1e-14);
}

TEST(Psi, SunWitnessIsClique) {
  const PsiResult r = psi_q(sun5(), 100, Rational(1, 2));
  EXPECT_EQ(r.witness, canonical_form(families::clique(5)));
  EXPECT_NEAR(static_cast<double>(r.log_psi),
              static_cast<double>(log_p1m(families::clique(5), 100)), 1e-12);
}

TEST(Psi, K4AtTen) {
  const PsiResult r = psi_q(families::clique(4), 10, Rational(0));
  EXPECT_EQ(r.witness, canonical_form(families::clique(4)));
  EXPECT_NEAR(static_cast<double>(r.psi), std::pow(210.0, -1.0 / 6), 1e-14);
}

TEST(Psi, TriangleAtFour) {
  EXPECT_NEAR(static_cast<double>(expectation_threshold(families::clique(3), 4)),
              std::pow(4.0, -1.0 / 3), 1e-14);
  EXPECT_NEAR(static_cast<double>(expectation_threshold(families::clique(2), 30)), 1.0 / 435, 1e-15);
}

TEST(Psi, OracleAgainstRawSubsets) {
  const std::vector<Graph> hs{families::clique(3),  families::clique(4),
                              families::cycle(5),   families::path(4),
                              families::sun(3),     families::perfect_matching(6),
                              families::cycle_with_out_edges(4), families::sun(4)};
  const std::vector<BigInt> ns{8, 12, 100, 100000};
  for (const Graph& h : hs) {
    ASSERT_LE(h.edge_count(), 12);
    for (const BigInt& n : ns) {
      if (BigInt(h.vertex_count()) > n) continue;
      for (const Rational& q : grid()) {
        const PsiResult fast = psi_q(h, n, q);
        const RawBest raw = raw_psi(h, n, q);
        EXPECT_NEAR(static_cast<double>(fast.log_psi), static_cast<double>(raw.log_psi), 1e-12)
            << to_edge_list(h) << " n=" << n << " q=" << q;
      }
    }
  }
}

TEST(Psi, Invariants) {
  const std::vector<Graph> hs{families::clique(4), sun5(), families::cycle(6),
                              families::cycle_with_out_edges(4), families::path(5)};
  const std::vector<BigInt> ns{12, 1000, 1000000};
  for (const Graph& h : hs) {
    for (const BigInt& n : ns) {
      long double previous = 1;
      const long double log_n = log_big(n);
      for (const Rational& q : grid()) {
        const PsiResult r = psi_q(h, n, q);
        EXPECT_LE(r.psi, previous * (1 + 1e-15L));
        previous = r.psi;
        const AlphaResult a = alpha_q(h, q);
        EXPECT_GE(r.log_psi, -to_long_double(a.alpha) * log_n - 1e-12L);
      }
      EXPECT_NEAR(static_cast<double>(psi_q(h, n, Rational(1)).log_psi),
                  static_cast<double>(log_p1m(h, n)), 1e-12);
    }
  }
}

TEST(Psi, TieBreakIsDeterministic) {
  // Isomorphic K4 components give exactly tied candidates; the witness must
  // not depend on which one the search meets first.
  const std::vector<int> sizes{4, 4, 4};
  const Graph h = families::disjoint_cliques(sizes);
  const PsiResult a = psi_q(h, 1000000, Rational(0));
  EXPECT_EQ(a.witness, canonical_form(h));
  const PsiResult two = psi_q(h, 1000000, Rational(1, 3));
  EXPECT_EQ(two.witness, canonical_form(h));
  std::vector<int> perm{5, 11, 2, 8, 0, 9, 1, 3, 10, 7, 6, 4};
  const PsiResult b = psi_q(h.relabeled(perm), 1000000, Rational(0));
  EXPECT_EQ(a.witness, b.witness);
}

TEST(Psi, BudgetExceeded) {
  SearchLimits tight;
  tight.max_candidates = 1;
  EXPECT_THROW(psi_q(families::clique(4), 6, Rational(0), tight), BudgetExceeded);
  SearchLimits small;
  small.max_vertices = 6;
  EXPECT_THROW(psi_q(sun5(), 100, Rational(0), small), BudgetExceeded);
}

TEST(Alpha, Examples) {
  for (const Rational& q : grid()) {
    EXPECT_EQ(alpha_q(families::clique(4), q).alpha, Rational(2, 3));
    EXPECT_EQ(alpha_q(families::perfect_matching(8), q).alpha, Rational(2));
  }
  const AlphaResult s0 = alpha_q(families::sun(4), Rational(0));
  EXPECT_EQ(s0.alpha, Rational(2, 3));
  EXPECT_EQ(s0.witness, (std::vector<Vertex>{0, 1, 2, 3}));
  const AlphaResult s8 = alpha_q(families::sun(4), Rational(4, 5));
  EXPECT_EQ(s8.alpha, Rational(3, 4));
  EXPECT_EQ(s8.witness.size(), 6U);
  EXPECT_EQ(s8.witness, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
}

TEST(Alpha, InducedSearchIsLossless) {
  const std::vector<Graph> hs{families::sun(3), families::sun(4), families::cycle(5),
                              families::cycle_with_out_edges(4), families::path(5),
                              families::clique(4)};
  for (const Graph& h : hs) {
    for (const Rational& q : grid()) {
      EXPECT_EQ(alpha_q(h, q).alpha, raw_alpha(h, q)) << to_edge_list(h) << " q=" << q;
    }
  }
}

TEST(Alpha, Monotone) {
  const Graph h = families::sun(6);
  Rational previous = 0;
  for (const Rational& q : grid()) {
    const Rational a = alpha_q(h, q).alpha;
    EXPECT_GE(a, previous);
    previous = a;
  }
}

TEST(Lambda, Examples) {
  EXPECT_NEAR(static_cast<double>(lambda_q(families::perfect_matching(8), 8, Rational(1))),
              0.25 * std::log(105.0), 1e-13);
  EXPECT_NEAR(static_cast<double>(lambda_q(families::perfect_matching(8), 8, Rational(1))), 1.1635,
              5e-5);
  EXPECT_NEAR(static_cast<double>(lambda_q(families::clique(5), 20, Rational(1))),
              0.1 * std::log(15504.0), 1e-13);
  // psi = 1 when H spans all of K_n: K2 in n = 2.
  EXPECT_NEAR(static_cast<double>(lambda_q(families::clique(2), 2, Rational(1))), 0.0, 1e-18);
}

TEST(DenseApprox, Examples) {
  EXPECT_NEAR(static_cast<double>(dense_approx_p1m(families::clique(5), 10000)), 0.01, 1e-15);
  EXPECT_NEAR(static_cast<double>(dense_approx_p1m(families::cycle(7), 500)), 1.0 / 500, 1e-15);
  const BigInt n = 1000000;
  const Graph k10 = families::clique(10);
  // C(n,v) <= M <= n^v gives 1 <= p1M / n^{-v/e} <= (v! n^v / (n)_v)^{1/e}.
  const long double ratio = p1m(k10, n) / dense_approx_p1m(k10, n);
  const long double upper =
      std::exp((std::log(3628800.0L) + 10 * std::log(1e6L) - log_falling_factorial(n, 10)) / 45);
  EXPECT_GE(ratio, 1.0L);
  EXPECT_LE(ratio, upper * (1 + 1e-15L));
  EXPECT_NEAR(static_cast<double>(ratio), std::pow(3628800.0, 1.0 / 45), 1e-5);
}

TEST(Curve, SunLandscape) {
  const std::vector<Rational> q{Rational(0), Rational(1, 2), Rational(7, 10), Rational(1)};
  const ThresholdCurve c = threshold_curve(sun5(), 100, q);
  ASSERT_TRUE(c.log_p_e.has_value());
  const CanonicalForm k5 = canonical_form(families::clique(5));
  EXPECT_EQ(c.points[0].psi->witness, k5);
  EXPECT_EQ(c.points[1].psi->witness, k5);
  EXPECT_NE(c.points[2].psi->witness, k5);
  EXPECT_NEAR(static_cast<double>(c.points[3].psi->log_psi), static_cast<double>(c.log_p1m_h), 1e-12);
  EXPECT_GT(log_p1m(families::clique(5), 100), log_p1m(sun5(), 100));
}

TEST(Curve, CycleNearInverseN) {
  const BigInt n = 10000;
  const ThresholdCurve c = threshold_curve(families::cycle(8), n, grid());
  for (const CurvePoint& p : c.points) {
    const long double ratio = p.psi->psi * 10000.0L;
    EXPECT_GE(ratio, 1.0L);
    EXPECT_LE(ratio, 2.0L);
  }
}

TEST(Curve, AlphaOnlyFallback) {
  const ThresholdCurve c = threshold_curve(sun5(), 100, grid(), {}, true);
  EXPECT_FALSE(c.log_p_e.has_value());
  EXPECT_FALSE(c.psi_error.empty());
  for (const CurvePoint& p : c.points) EXPECT_FALSE(p.psi.has_value());
  SearchLimits tight;
  tight.max_candidates = 2;
  const ThresholdCurve d = threshold_curve(sun5(), 100, grid(), tight);
  EXPECT_FALSE(d.points.front().psi.has_value());
  EXPECT_EQ(d.points.front().alpha.alpha, Rational(1, 2));
}

TEST(Curve, DisjointCliques) {
  const std::vector<int> sizes{8, 4, 4, 4, 4};
  const Graph h = families::disjoint_cliques(sizes);
  const ThresholdCurve c = threshold_curve(h, 1000000, {Rational(0), Rational(1, 2)});
  const CanonicalForm k8 = canonical_form(families::clique(8));
  EXPECT_EQ(c.points[0].psi->witness, k8);
  // K8 alone carries 28 of 52 edges, so it stays feasible at q = 1/2.
  EXPECT_EQ(c.points[1].psi->witness, k8);
  const PsiResult q6 = psi_q(h, 1000000, Rational(3, 5));
  EXPECT_GT(Rational(q6.witness.vertex_count, q6.witness.edge_count()), Rational(8, 28));
}

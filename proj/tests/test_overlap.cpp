#include "planted/canonical.hpp"
#include "planted/copies.hpp"
#include "planted/errors.hpp"
#include "planted/overlap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>

using namespace planted;

namespace {

std::vector<Graph> corpus() {
  return {families::clique(3),           families::clique(4),
          families::cycle(4),            families::cycle(5),
          families::path(3),             families::perfect_matching(4),
          families::perfect_matching(6), families::sun(4)};
}

// Overlap law from every ordered pair of copies.
std::vector<Rational> pair_enumeration(const Graph& h, int n) {
  const auto copies = enumerate_copies(h, families::clique(n));
  std::vector<BigInt> counts(static_cast<std::size_t>(h.edge_count()) + 1, 0);
  for (const auto& a : copies) {
    for (const auto& b : copies) {
      std::vector<Edge> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      ++counts[common.size()];
    }
  }
  const BigInt pairs = BigInt(copies.size()) * copies.size();
  std::vector<Rational> out;
  for (const BigInt& c : counts) out.emplace_back(c, pairs);
  return out;
}

std::vector<std::vector<int>> edge_subsets(int e, int size) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    if (std::popcount(mask) != size) continue;
    std::vector<int> idx;
    for (int i = 0; i < e; ++i) {
      if ((mask >> i) & 1U) idx.push_back(i);
    }
    out.push_back(idx);
  }
  return out;
}

std::optional<int> raw_v_ell(const Graph& h, const Graph& h2, int ell) {
  if (ell == 0) return 0;
  std::optional<int> best;
  const auto right = edge_subsets(h2.edge_count(), ell);
  for (const auto& a : edge_subsets(h.edge_count(), ell)) {
    const Graph j = h.edge_subgraph(a);
    for (const auto& b : right) {
      if (are_isomorphic(j, h2.edge_subgraph(b))) {
        if (!best || j.vertex_count() < *best) best = j.vertex_count();
        break;
      }
    }
  }
  return best;
}

// E_P Z(Y) by summing over every observation Y on n vertices.
long double planted_mean_copies(const Graph& h, int n, long double p) {
  const auto copies = enumerate_copies(h, families::clique(n));
  const int pairs = n * (n - 1) / 2;
  std::vector<Edge> all;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
  }
  std::vector<std::uint64_t> masks;
  for (const auto& c : copies) {
    std::uint64_t m = 0;
    for (const Edge& e : c) m |= std::uint64_t{1} << (std::find(all.begin(), all.end(), e) - all.begin());
    masks.push_back(m);
  }
  const int k = h.edge_count();
  long double total = 0;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << pairs); ++y) {
    int z = 0;
    for (std::uint64_t m : masks) z += (y & m) == m ? 1 : 0;
    if (z == 0) continue;
    const int size = std::popcount(y);
    const long double weight = std::pow(p, size - k) * std::pow(1 - p, pairs - size);
    // P(Y) = (1/M) sum_S [S in Y] p^{|Y|-K} (1-p)^{N-|Y|}
    total += static_cast<long double>(z) / copies.size() * weight * z;
  }
  return total;
}

}  // namespace

TEST(Overlap, Examples) {
  const OverlapDistribution k3 = prior_overlap_distribution(families::clique(3), 4);
  EXPECT_EQ(k3.at(3), Rational(1, 4));
  EXPECT_EQ(k3.at(1), Rational(3, 4));
  EXPECT_EQ(k3.at(0), 0);
  EXPECT_EQ(k3.at(2), 0);
  const OverlapDistribution edge = prior_overlap_distribution(families::path(2), 3);
  EXPECT_EQ(edge.at(1), Rational(1, 3));
  EXPECT_EQ(edge.at(0), Rational(2, 3));
  const OverlapDistribution m4 = prior_overlap_distribution(families::perfect_matching(4), 4);
  EXPECT_EQ(m4.at(2), Rational(1, 3));
  EXPECT_EQ(m4.at(0), Rational(2, 3));
  EXPECT_EQ(m4.support(), (std::vector<int>{0, 2}));
}

TEST(Overlap, MatchesPairEnumeration) {
  for (const Graph& h : corpus()) {
    for (int n = h.vertex_count(); n <= std::min(8, h.vertex_count() + 3); ++n) {
      const auto expected = pair_enumeration(h, n);
      const OverlapDistribution got = prior_overlap_distribution(h, n, OverlapMethod::kEnumerate);
      ASSERT_EQ(got.probability, expected) << to_edge_list(h) << " n=" << n;
    }
  }
}

TEST(Overlap, ClosedFormsMatchEnumeration) {
  for (int k = 2; k <= 6; ++k) {
    for (int n = k; n <= 8; ++n) {
      const Graph h = families::clique(k);
      EXPECT_EQ(prior_overlap_distribution(h, n, OverlapMethod::kClosedForm).probability,
                prior_overlap_distribution(h, n, OverlapMethod::kEnumerate).probability)
          << "K" << k << " n=" << n;
    }
  }
  for (int v = 2; v <= 8; v += 2) {
    for (int n = v; n <= 10; ++n) {
      const Graph h = families::perfect_matching(v);
      EXPECT_EQ(prior_overlap_distribution(h, n, OverlapMethod::kClosedForm).probability,
                prior_overlap_distribution(h, n, OverlapMethod::kEnumerate).probability)
          << "matching(" << v << ") n=" << n;
    }
  }
  EXPECT_THROW(prior_overlap_distribution(families::cycle(5), 8, OverlapMethod::kClosedForm),
               std::invalid_argument);
}

TEST(Overlap, Invariants) {
  std::vector<std::pair<Graph, BigInt>> cases;
  for (const Graph& h : corpus()) cases.emplace_back(h, 10);
  cases.emplace_back(families::clique(5), 20);
  cases.emplace_back(families::clique(8), BigInt(1000000));
  cases.emplace_back(families::perfect_matching(10), 50);
  for (const auto& [h, n] : cases) {
    const OverlapDistribution d = prior_overlap_distribution(h, n);
    Rational total = 0;
    for (const Rational& p : d.probability) {
      EXPECT_GE(p, 0);
      total += p;
    }
    EXPECT_EQ(total, 1) << to_edge_list(h);
    EXPECT_EQ(d.at(d.edges), Rational(1, d.copies));
    EXPECT_EQ(d.copies, count_copies_in_complete(h, n));
  }
}

TEST(Overlap, BudgetExceeded) {
  EXPECT_THROW(prior_overlap_distribution(families::cycle(5), 40), BudgetExceeded);
  OverlapLimits tight;
  tight.max_copies = 10;
  EXPECT_THROW(prior_overlap_distribution(families::cycle(5), 8, OverlapMethod::kAuto, tight), BudgetExceeded);
}

TEST(Growth, Examples) {
  const OverlapDistribution k3 = prior_overlap_distribution(families::clique(3), 4);
  EXPECT_NEAR(growth_functional(k3, 3), 0.0L, 1e-15L);
  EXPECT_TRUE(std::isinf(growth_functional(k3, 2)));
  EXPECT_LT(growth_functional(k3, 2), 0);
  EXPECT_NEAR(growth_functional(k3, 1), (std::log(0.75L) + std::log(4.0L) / 3) / 3, 1e-15L);
  EXPECT_NEAR(weak_growth_functional(k3, 3), 0.0L, 1e-15L);
  EXPECT_NEAR(weak_growth_functional(k3, 1), (std::log(0.75L) + std::log(4.0L) / 3) / std::log(4.0L), 1e-15L);

  const OverlapDistribution k5 = prior_overlap_distribution(families::clique(5), 20);
  for (int ell : k5.support()) {
    EXPECT_TRUE(std::isfinite(growth_functional(k5, ell)));
    if (ell == 0) EXPECT_LE(growth_functional(k5, ell), 0);
  }
  EXPECT_EQ(k5.support(), (std::vector<int>{0, 1, 3, 6, 10}));
}

TEST(Growth, WeakScalesGrowth) {
  // With p_c = p1M, weak = (K / log M) * growth.
  const OverlapDistribution d = prior_overlap_distribution(families::cycle(5), 9);
  for (int ell : d.support()) {
    EXPECT_NEAR(weak_growth_functional(d, ell),
                growth_functional(d, ell) * d.edges / log_big(d.copies), 1e-12L);
  }
}

TEST(Moments, Examples) {
  const OverlapDistribution k3 = prior_overlap_distribution(families::clique(3), 4);
  EXPECT_NEAR(truncated_first_moment(k3, 0.1L, Rational(1, 3)).sum, 0.03L, 1e-15L);
  EXPECT_NEAR(truncated_second_moment(k3, 0.9L, Rational(1, 3)).sum, 0.75L / 0.9L + 0.25L / (0.9L * 0.9L * 0.9L),
              1e-15L);
  EXPECT_NEAR(truncated_second_moment(k3, 0.9L, Rational(1, 3)).sum, 1.176, 1e-3);
  const OverlapDistribution m4 = prior_overlap_distribution(families::perfect_matching(4), 4);
  EXPECT_NEAR(truncated_first_moment(m4, 0.05L, Rational(1, 2)).sum, 0.005L, 1e-15L);
  EXPECT_NEAR(truncated_second_moment(m4, 0.9L, Rational(99, 100)).sum, (1.0L / 3) / 0.81L, 1e-15L);
  // p = 1: first sum is M times the mass below (1 - delta) K; second is a probability.
  EXPECT_NEAR(truncated_first_moment(k3, 1, Rational(1, 3)).sum, 3.0L, 1e-15L);
  EXPECT_LE(truncated_second_moment(k3, 1, Rational(1, 3)).sum, 1.0L + 1e-15L);
  EXPECT_THROW(truncated_first_moment(k3, 0, Rational(1, 3)), std::invalid_argument);
  EXPECT_THROW(truncated_first_moment(k3, 0.5L, Rational(1)), std::invalid_argument);
}

TEST(Moments, MonotoneInDelta) {
  for (const Graph& h : corpus()) {
    const OverlapDistribution d = prior_overlap_distribution(h, 9);
    for (const long double p : {0.05L, 0.3L, 0.8L}) {
      long double first = INFINITY;
      long double second = INFINITY;
      for (int i = 1; i < 10; ++i) {
        const MomentReport r = moment_report(d, p, Rational(i, 10));
        EXPECT_LE(r.first.sum, first);
        EXPECT_LE(r.second.sum, second);
        long double total = 0;
        for (const auto& [ell, term] : r.first.terms) {
          EXPECT_GE(term, 0);
          total += term;
        }
        EXPECT_NEAR(total, r.first.sum, 1e-15L * (1 + r.first.sum));
        first = r.first.sum;
        second = r.second.sum;
      }
    }
  }
}

TEST(Moments, FullFirstMomentIsPlantedMeanCount) {
  const std::vector<std::pair<Graph, int>> cases{
      {families::clique(3), 4}, {families::path(3), 4}, {families::perfect_matching(4), 4}, {families::clique(3), 5}};
  for (const auto& [h, n] : cases) {
    const OverlapDistribution d = prior_overlap_distribution(h, n);
    for (const long double p : {0.1L, 0.5L, 0.9L}) {
      long double full = 0;
      for (int ell = 0; ell <= d.edges; ++ell) {
        full += to_long_double(d.at(ell)) * to_long_double(d.copies) * std::pow(p, d.edges - ell);
      }
      EXPECT_NEAR(full, planted_mean_copies(h, n, p), 1e-12L) << to_edge_list(h) << " p=" << p;
    }
  }
}

TEST(VEll, Examples) {
  EXPECT_EQ(v_ell(families::clique(4), families::clique(4), 2), 3);
  EXPECT_EQ(v_ell(families::cycle(5), families::cycle(5), 2), 3);
  for (const Graph& h : corpus()) EXPECT_EQ(v_ell(h, h, h.edge_count()), h.vertex_count());
  EXPECT_EQ(v_ell(families::perfect_matching(4), families::clique(3), 2), std::nullopt);
  EXPECT_EQ(v_ell(families::clique(3), families::perfect_matching(4), 0), 0);
  EXPECT_THROW(v_ell(families::clique(3), families::path(3), 3), std::invalid_argument);
}

TEST(VEll, MatchesCommonSubgraphScan) {
  const std::vector<Graph> graphs = corpus();
  for (const Graph& a : graphs) {
    for (const Graph& b : graphs) {
      for (int ell = 0; ell <= std::min(a.edge_count(), b.edge_count()); ++ell) {
        EXPECT_EQ(v_ell(a, b, ell), raw_v_ell(a, b, ell)) << to_edge_list(a) << " | " << to_edge_list(b) << " l=" << ell;
      }
    }
  }
}

TEST(CountBound, Examples) {
  const Graph k3 = families::clique(3);
  EXPECT_GE(count_bound_exact(k3, k3, 1, 4), Rational(3, 4));
  EXPECT_GE(count_bound_exact(k3, k3, 3, 4), Rational(1, 4));
  EXPECT_THROW(count_bound_exact(families::clique(4), k3, 1, 6), std::invalid_argument);
}

TEST(CountBound, DominatesExactOverlap) {
  for (const Graph& h : corpus()) {
    for (int n = h.vertex_count(); n <= 10; ++n) {
      const OverlapDistribution d = prior_overlap_distribution(h, n, OverlapMethod::kEnumerate);
      for (int ell = 0; ell <= d.edges; ++ell) {
        EXPECT_GE(count_bound_exact(h, h, ell, n), d.at(ell)) << to_edge_list(h) << " n=" << n << " l=" << ell;
      }
    }
  }
}

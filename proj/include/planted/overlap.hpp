#ifndef PLANTED_OVERLAP_HPP
#define PLANTED_OVERLAP_HPP

#include "planted/graph.hpp"
#include "planted/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace planted {

enum class OverlapMethod { kAuto, kEnumerate, kClosedForm };

struct OverlapLimits {
  int max_enumeration_n = 12;
  std::uint64_t max_copies = 20000000;
};

/// Law of |S ∩ S'| for independent uniform copies S, S' of H in K_n.
struct OverlapDistribution {
  BigInt n;
  int edges = 0;                   // K = e(H)
  BigInt copies;                   // M_H
  std::vector<Rational> probability;  // index l = 0..K; zero where infeasible
  std::string method;              // "enumeration", "clique", "matching"

  Rational at(int ell) const;
  /// Overlaps with positive probability, increasing.
  std::vector<int> support() const;
};

/**
 * Exact overlap distribution. kAuto uses a closed form for cliques and
 * perfect matchings and otherwise fixes one copy H0 and streams every copy
 * of H in K_n. Throws BudgetExceeded when neither applies.
 */
OverlapDistribution prior_overlap_distribution(const Graph& h, const BigInt& n,
                                               OverlapMethod method = OverlapMethod::kAuto,
                                               const OverlapLimits& limits = {});

/// (1/K) log(P(l) / p1M^l); -infinity when P(l) = 0.
long double growth_functional(const OverlapDistribution& dist, int ell);

/// (1/log M) log(P(l) / p_c^l), with p_c = p1M unless given.
long double weak_growth_functional(const OverlapDistribution& dist, int ell,
                                   std::optional<long double> log_p_c = std::nullopt);

struct TruncatedSum {
  long double sum = 0;
  std::vector<std::pair<int, long double>> terms;  // (l, term), l increasing
};

/// Sum over l <= (1 - delta) K of P(l) M p^{K - l}.
TruncatedSum truncated_first_moment(const OverlapDistribution& dist, long double p, const Rational& delta);

/// Sum over l >= delta K of P(l) / p^l.
TruncatedSum truncated_second_moment(const OverlapDistribution& dist, long double p, const Rational& delta);

struct MomentReport {
  long double p = 0;
  Rational delta;
  TruncatedSum first;
  TruncatedSum second;
};

MomentReport moment_report(const OverlapDistribution& dist, long double p, const Rational& delta);

/// Fewest vertices of an l-edge graph (no isolated vertices) contained in
/// both H and H'. Empty when no such graph exists; 0 for l = 0.
std::optional<int> v_ell(const Graph& h, const Graph& h2, int ell, std::uint64_t budget = 50000000);

/**
 * (1/M_H) sum_{w >= v_l} C(v(H'), w) C(n - v(H'), v(H) - w) Psi_H with
 * Psi_H = v(H)! / |Aut H|: an upper bound on the probability that a copy of
 * H meets a fixed copy of H' in exactly l edges. The sum starts at w = 0
 * when l is infeasible.
 */
Rational count_bound_exact(const Graph& h, const Graph& h2, int ell, const BigInt& n);

}  // namespace planted

#endif  // PLANTED_OVERLAP_HPP

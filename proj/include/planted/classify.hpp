#ifndef PLANTED_CLASSIFY_HPP
#define PLANTED_CLASSIFY_HPP

#include "planted/graph.hpp"
#include "planted/numeric.hpp"
#include "planted/thresholds.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace planted {

/// Finite-n stand-ins for the asymptotic "= 1 + o(1)" conditions.
struct ToleranceConfig {
  long double ratio_tol = 0.1L;
  long double deloc_C = 10.0L;
  Rational deloc_q{1, 2};
  Rational stable_delta{1, 10};
  std::vector<std::pair<Rational, Rational>> flat_pairs{{Rational(1, 10), Rational(9, 10)},
                                                        {Rational(1, 20), Rational(19, 20)}};
  long double dense_threshold = 3.0L;
  Rational spread_delta{1, 2};
  std::uint64_t stable_subset_budget = 1000000;  // edge subsets for the extension form
  int subgraph_edge_cap = 24;                    // iso-class enumeration (spread)
  SearchLimits limits;
};

struct BalanceResult {
  bool holds = false;
  std::vector<Vertex> witness;  // densest vertex set when not balanced
  Rational density_ratio;       // max e(J)/v(J) divided by e(H)/v(H)
};

BalanceResult is_balanced(const Graph& h, const SearchLimits& limits = {});

struct StrongBalanceResult {
  bool holds = false;
  std::vector<Vertex> witness;  // vertex set with the largest violating e/(v-c)
};

/// e(J)/(v(J)-c) <= e(H)/(v(H)-c) for all nonempty J. Throws
/// std::invalid_argument unless 0 < c < 2.
StrongBalanceResult is_strongly_balanced(const Graph& h, const Rational& c,
                                         const SearchLimits& limits = {});

/// Supremum of the c in (0, 2) for which H is strongly balanced, capped at 2;
/// empty when no c > 0 works.
std::optional<Rational> max_strongly_balanced_c(const Graph& h, const SearchLimits& limits = {});

/// e(H) / (v(H) log v(H)).
long double dense_diagnostic(const Graph& h);

struct DelocalizationResult {
  bool holds = false;
  Rational alpha_0;
  Rational alpha_q;
  long double gap = 0;  // (alpha_q - alpha_0) log n
};

DelocalizationResult is_delocalized(const Graph& h, const BigInt& n, const ToleranceConfig& cfg = {});

/// psi_q / psi_{q'} for 0 < q <= q' < 1.
long double almost_balanced_gap(const Graph& h, const BigInt& n, const Rational& q, const Rational& q2,
                                const SearchLimits& limits = {});

/// lambda_{q'} / lambda_q for q <= q' (>= 1). Throws DegenerateGap when
/// lambda_q = 0.
long double first_moment_flat_gap(const Graph& h, const BigInt& n, const Rational& q,
                                  const Rational& q2, const SearchLimits& limits = {});

class DegenerateGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StableGap {
  long double gap = 0;  // lambda_{1-delta} / lambda_1 (<= 1)
  /// max over J with e(J) >= (1-delta) e(H) of log M_{H|J} / log M_H; empty
  /// when the number of edge subsets exceeds the budget.
  std::optional<long double> extension_ratio;
  std::vector<Edge> extension_witness;
};

StableGap first_moment_stable_gap(const Graph& h, const BigInt& n, const Rational& delta,
                                  const ToleranceConfig& cfg = {});

/// Smallest pbar with P(A in S) <= pbar^{|A|} for all A with |A| >= delta e(H):
/// the max over classes J with e(J) >= delta e(H) of (M_{J,H}/M_J)^{1/e(J)}.
struct SpreadResult {
  long double pbar = 0;
  long double log_pbar = 0;
  CanonicalForm witness;
};
SpreadResult spread_certificate(const Graph& h, const BigInt& n, const Rational& delta,
                                int edge_cap = 24);

/// 3 pbar / delta.
long double nothing_regime_bound(const Graph& h, const BigInt& n, const Rational& delta,
                                 int edge_cap = 24);

struct ConditionEntry {
  std::string name;
  std::string operation;
  std::optional<bool> holds;       // empty: not evaluated (budget) or informational
  std::optional<long double> gap;  // raw numeric evidence
  std::string certificate;         // witness or explanation
};

enum class AonRegime { kLinear, kExponential, kNoneDetected };
const char* to_string(AonRegime regime);

struct AonVerdict {
  AonRegime regime = AonRegime::kNoneDetected;
  std::string route;  // sparse-strongly-balanced | dense-almost-balanced | exponential-flat-stable | none
  std::optional<long double> predicted_threshold;
  std::optional<long double> log_predicted_threshold;
  std::vector<std::string> failing_conditions;
};

struct ClassificationReport {
  BigInt n;
  int vertices = 0;
  int edges = 0;
  long double log_p1m = 0;
  std::vector<ConditionEntry> conditions;
  AonVerdict verdict;
  std::vector<std::string> notes;

  const ConditionEntry* find(const std::string& name) const;
};

/// Sparse route, then dense route, then exponential route; the first whose
/// conditions all hold decides. "none-detected" only means none of these
/// sufficient conditions could be confirmed.
ClassificationReport aon_verdict(const Graph& h, const BigInt& n, const ToleranceConfig& cfg = {});

}  // namespace planted

#endif  // PLANTED_CLASSIFY_HPP

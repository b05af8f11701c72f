#ifndef PLANTED_THRESHOLDS_HPP
#define PLANTED_THRESHOLDS_HPP

#include "planted/canonical.hpp"
#include "planted/graph.hpp"
#include "planted/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace planted {

struct SearchLimits {
  int max_vertices = 28;                   // vertex-subset searches
  std::uint64_t max_candidates = 200000;   // subgraphs scored exactly by the psi search
  std::uint64_t max_subsets = 20000000;    // edge subsets visited by the psi search
};

/// max(1, ceil(q * e(H))).
int min_edges_for(const Graph& h, const Rational& q);

/// log M_J with M_J = (n)_{v(J)} / |Aut J|.
long double log_copy_count(const Graph& j, const BigInt& n);

/// log p1M(J) = -log(M_J) / e(J). Throws std::invalid_argument for edgeless J
/// or v(J) > n.
long double log_p1m(const Graph& j, const BigInt& n);
long double p1m(const Graph& j, const BigInt& n);

struct PsiResult {
  Rational q;
  int min_edges = 1;
  long double log_psi = 0;  // <= 0
  long double psi = 1;
  CanonicalForm witness;
  std::uint64_t candidates = 0;  // subgraphs scored
};

/**
 * psi_q(H) = max p1M(J) over subgraphs J of H (no isolated vertices) with
 * e(J) >= max(1, ceil(q e(H))). Exact ties go to the smallest canonical form.
 *
 * Vertex supports are scanned exhaustively and pruned with the bound
 * log M_J >= log C(n, v(J)); throws BudgetExceeded past `limits`.
 */
PsiResult psi_q(const Graph& h, const BigInt& n, const Rational& q, const SearchLimits& limits = {});

/// p_E(H) = psi_0(H).
long double expectation_threshold(const Graph& h, const BigInt& n, const SearchLimits& limits = {});

/// lambda_q = -log psi_q.
long double lambda_q(const Graph& h, const BigInt& n, const Rational& q, const SearchLimits& limits = {});

struct AlphaResult {
  Rational q;
  int min_edges = 1;
  Rational alpha;              // min v(J)/e(J)
  std::vector<Vertex> witness;  // minimizing vertex set W, J = H[W]
};

/// alpha_q(H) over induced subgraphs H[W] with at least min_edges_for(q)
/// edges; the witness is the smallest W, ties broken lexicographically.
AlphaResult alpha_q(const Graph& h, const Rational& q, const SearchLimits& limits = {});

/// -(v(H)/e(H)) log n, the log of the dense-regime approximation n^{-v/e}.
long double log_dense_approx_p1m(const Graph& h, const BigInt& n);
long double dense_approx_p1m(const Graph& h, const BigInt& n);

struct CurvePoint {
  Rational q;
  std::optional<PsiResult> psi;  // empty when the psi search is unavailable
  AlphaResult alpha;
  long double log_surrogate = 0;  // -alpha_q log n
};

struct ThresholdCurve {
  BigInt n;
  long double log_p1m_h = 0;
  std::optional<long double> log_p_e;
  std::vector<CurvePoint> points;
  std::string psi_error;  // why psi is missing, if it is
};

/// psi_q, lambda_q, alpha_q and witnesses over a grid. When the psi search
/// exceeds its budget (or alpha_only is set) only the alpha-based surrogate
/// is filled in and psi_error says why.
ThresholdCurve threshold_curve(const Graph& h, const BigInt& n, const std::vector<Rational>& q_grid,
                               const SearchLimits& limits = {}, bool alpha_only = false);

}  // namespace planted

#endif  // PLANTED_THRESHOLDS_HPP

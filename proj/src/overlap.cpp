#include "planted/overlap.hpp"

#include "planted/canonical.hpp"
#include "planted/copies.hpp"
#include "planted/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace planted {

Rational OverlapDistribution::at(int ell) const {
  if (ell < 0 || ell >= static_cast<int>(probability.size())) return Rational(0);
  return probability[static_cast<std::size_t>(ell)];
}

std::vector<int> OverlapDistribution::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < probability.size(); ++i) {
    if (probability[i] > 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

bool is_clique(const Graph& h) {
  const int v = h.vertex_count();
  return h.edge_count() == v * (v - 1) / 2;
}

bool is_perfect_matching(const Graph& h) {
  if (h.vertex_count() == 0) return false;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (h.degree(v) != 1) return false;
  }
  return true;
}

// Number of r-edge matchings in K_size.
BigInt matchings(const BigInt& size, int r) {
  if (size < 2 * r) return 0;
  BigInt denom = factorial(static_cast<std::uint64_t>(r));
  denom <<= r;
  return falling_factorial(size, static_cast<std::uint64_t>(2 * r)) / denom;
}

void clique_closed_form(const Graph& h, OverlapDistribution& dist) {
  const int k = h.vertex_count();
  const BigInt total = binomial(dist.n, static_cast<std::uint64_t>(k));
  for (int w = 0; w <= k; ++w) {
    const BigInt ways = binomial(k, static_cast<std::uint64_t>(w)) *
                        binomial(dist.n - k, static_cast<std::uint64_t>(k - w));
    dist.probability[static_cast<std::size_t>(w * (w - 1) / 2)] += Rational(ways, total);
  }
}

// Matchings sharing exactly l edges with a fixed one, by inclusion-exclusion
// over the remaining edges of the fixed matching.
void matching_closed_form(OverlapDistribution& dist) {
  const int m = dist.edges;
  for (int ell = 0; ell <= m; ++ell) {
    BigInt count = 0;
    for (int j = 0; j <= m - ell; ++j) {
      const BigInt term = binomial(m - ell, static_cast<std::uint64_t>(j)) *
                          matchings(dist.n - 2 * (ell + j), m - ell - j);
      if (j % 2 == 0) {
        count += term;
      } else {
        count -= term;
      }
    }
    count *= binomial(m, static_cast<std::uint64_t>(ell));
    dist.probability[static_cast<std::size_t>(ell)] = Rational(count, dist.copies);
  }
}

void enumerate_overlaps(const Graph& h, OverlapDistribution& dist) {
  const int v = h.vertex_count();
  const Graph host = families::clique(dist.n.convert_to<int>());
  std::vector<std::uint64_t> tally(static_cast<std::size_t>(dist.edges) + 1, 0);
  CopyFinder(h).for_each(host, [&](std::span<const Vertex> emb) {
    int shared = 0;
    for (const auto& [a, b] : h.edges()) {
      const Vertex x = emb[static_cast<std::size_t>(a)];
      const Vertex y = emb[static_cast<std::size_t>(b)];
      if (x < v && y < v && h.has_edge(x, y)) ++shared;
    }
    ++tally[static_cast<std::size_t>(shared)];
    return true;
  });
  BigInt seen = 0;
  for (std::size_t ell = 0; ell < tally.size(); ++ell) {
    seen += tally[ell];
    dist.probability[ell] = Rational(BigInt(tally[ell]), dist.copies);
  }
  if (seen != dist.copies) throw std::logic_error("copy enumeration disagrees with M_H");
}

}  // namespace

OverlapDistribution prior_overlap_distribution(const Graph& h, const BigInt& n, OverlapMethod method,
                                               const OverlapLimits& limits) {
  if (h.edge_count() == 0) throw std::invalid_argument("overlap needs at least one edge");
  if (BigInt(h.vertex_count()) > n) throw std::invalid_argument("pattern has more vertices than n");
  OverlapDistribution dist;
  dist.n = n;
  dist.edges = h.edge_count();
  dist.copies = count_copies_in_complete(h, n);
  dist.probability.assign(static_cast<std::size_t>(dist.edges) + 1, Rational(0));

  const bool closed = h.support_size() == h.vertex_count() && (is_clique(h) || is_perfect_matching(h));
  const bool enumerable = n <= limits.max_enumeration_n && dist.copies <= limits.max_copies;
  if (method == OverlapMethod::kClosedForm && !closed) {
    throw std::invalid_argument("no closed form: pattern is neither a clique nor a perfect matching");
  }
  if (method == OverlapMethod::kEnumerate || (method == OverlapMethod::kAuto && !closed)) {
    if (!enumerable) {
      throw BudgetExceeded("overlap enumeration limited to n <= " + std::to_string(limits.max_enumeration_n) +
                           " and " + std::to_string(limits.max_copies) + " copies");
    }
    enumerate_overlaps(h, dist);
    dist.method = "enumeration";
    return dist;
  }
  if (is_clique(h)) {
    clique_closed_form(h, dist);
    dist.method = "clique";
  } else {
    matching_closed_form(dist);
    dist.method = "matching";
  }
  return dist;
}

long double growth_functional(const OverlapDistribution& dist, int ell) {
  const Rational prob = dist.at(ell);
  if (prob == 0) return -std::numeric_limits<long double>::infinity();
  const long double k = static_cast<long double>(dist.edges);
  return (log_rational(prob) + static_cast<long double>(ell) / k * log_big(dist.copies)) / k;
}

long double weak_growth_functional(const OverlapDistribution& dist, int ell, std::optional<long double> log_p_c) {
  const long double log_m = log_big(dist.copies);
  if (log_m == 0) throw std::invalid_argument("weak growth undefined when M_H = 1");
  const Rational prob = dist.at(ell);
  if (prob == 0) return -std::numeric_limits<long double>::infinity();
  const long double log_pc = log_p_c ? *log_p_c : -log_m / static_cast<long double>(dist.edges);
  return (log_rational(prob) - static_cast<long double>(ell) * log_pc) / log_m;
}

namespace {

void check_moment_args(long double p, const Rational& delta) {
  if (!(p > 0 && p <= 1)) throw std::invalid_argument("p must lie in (0, 1]");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
}

}  // namespace

TruncatedSum truncated_first_moment(const OverlapDistribution& dist, long double p, const Rational& delta) {
  check_moment_args(p, delta);
  TruncatedSum out;
  const long double log_m = log_big(dist.copies);
  const Rational limit = (Rational(1) - delta) * dist.edges;
  for (int ell = 0; ell <= dist.edges && Rational(ell) <= limit; ++ell) {
    const Rational prob = dist.at(ell);
    const long double term =
        prob == 0 ? 0.0L
                  : std::exp(log_rational(prob) + log_m + static_cast<long double>(dist.edges - ell) * std::log(p));
    out.terms.emplace_back(ell, term);
    out.sum += term;
  }
  return out;
}

TruncatedSum truncated_second_moment(const OverlapDistribution& dist, long double p, const Rational& delta) {
  check_moment_args(p, delta);
  TruncatedSum out;
  const Rational limit = delta * dist.edges;
  for (int ell = 0; ell <= dist.edges; ++ell) {
    if (Rational(ell) < limit) continue;
    const Rational prob = dist.at(ell);
    const long double term =
        prob == 0 ? 0.0L : std::exp(log_rational(prob) - static_cast<long double>(ell) * std::log(p));
    out.terms.emplace_back(ell, term);
    out.sum += term;
  }
  return out;
}

MomentReport moment_report(const OverlapDistribution& dist, long double p, const Rational& delta) {
  MomentReport r;
  r.p = p;
  r.delta = delta;
  r.first = truncated_first_moment(dist, p, delta);
  r.second = truncated_second_moment(dist, p, delta);
  return r;
}

std::optional<int> v_ell(const Graph& h, const Graph& h2, int ell, std::uint64_t budget) {
  if (ell < 0 || ell > std::min(h.edge_count(), h2.edge_count())) {
    throw std::invalid_argument("l must lie in [0, min(e(H), e(H'))]");
  }
  if (ell == 0) return 0;
  const int e = h.edge_count();
  if (binomial(e, static_cast<std::uint64_t>(ell)) > budget) {
    throw BudgetExceeded("v_l search exceeded " + std::to_string(budget) + " edge subsets");
  }
  std::map<CanonicalForm, bool> embeds;
  std::optional<int> best;
  std::vector<int> idx(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<int> touched(static_cast<std::size_t>(h.vertex_count()));
  int stamp = 0;
  while (true) {
    ++stamp;
    int w = 0;
    for (int i : idx) {
      for (Vertex x : {h.edges()[static_cast<std::size_t>(i)].first, h.edges()[static_cast<std::size_t>(i)].second}) {
        if (touched[static_cast<std::size_t>(x)] != stamp) {
          touched[static_cast<std::size_t>(x)] = stamp;
          ++w;
        }
      }
    }
    if (!best || w < *best) {
      const Graph j = h.edge_subgraph(idx);
      CanonicalForm form = canonical_form(j);
      auto it = embeds.find(form);
      if (it == embeds.end()) it = embeds.emplace(std::move(form), CopyFinder(j).exists(h2)).first;
      if (it->second) best = w;
    }
    int i = ell - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == e - ell + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < ell; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
  }
  return best;
}

Rational count_bound_exact(const Graph& h, const Graph& h2, int ell, const BigInt& n) {
  const int v = h.vertex_count();
  const int v2 = h2.vertex_count();
  if (v > v2 || BigInt(v2) > n) throw std::invalid_argument("need v(H) <= v(H') <= n");
  const int start = v_ell(h, h2, ell).value_or(0);
  BigInt sum = 0;
  for (int w = start; w <= v; ++w) {
    sum += binomial(v2, static_cast<std::uint64_t>(w)) * binomial(n - v2, static_cast<std::uint64_t>(v - w));
  }
  // Psi_H / M_H = v! / (n)_v.
  return Rational(sum * factorial(static_cast<std::uint64_t>(v)), falling_factorial(n, static_cast<std::uint64_t>(v)));
}

}  // namespace planted

#include "planted/classify.hpp"

#include "planted/canonical.hpp"
#include "planted/copies.hpp"
#include "planted/errors.hpp"
#include "planted/subsets.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace planted {

namespace {

std::string join_vertices(const std::vector<Vertex>& vs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "," : "") << vs[i];
  out << '}';
  return out.str();
}

std::string join_edges(const std::vector<Edge>& es) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < es.size(); ++i) {
    out << (i ? " " : "") << es[i].first << '-' << es[i].second;
  }
  out << ']';
  return out.str();
}

std::string describe(const CanonicalForm& f) {
  return "v=" + std::to_string(f.vertex_count) + " e=" + std::to_string(f.edge_count()) + " " +
         join_edges(f.edges);
}

std::string fixed(long double x, int digits = 6) {
  std::ostringstream out;
  out.precision(digits);
  out << static_cast<double>(x);
  return out.str();
}

}  // namespace

BalanceResult is_balanced(const Graph& h, const SearchLimits& limits) {
  if (h.edge_count() == 0) throw std::invalid_argument("is_balanced needs at least one edge");
  const AlphaResult a = alpha_q(h, Rational(0), limits);
  const Rational own(h.vertex_count(), h.edge_count());
  BalanceResult r;
  r.holds = a.alpha == own;
  r.density_ratio = own / a.alpha;
  if (!r.holds) r.witness = a.witness;
  return r;
}

StrongBalanceResult is_strongly_balanced(const Graph& h, const Rational& c, const SearchLimits& limits) {
  if (c <= 0 || c >= 2) throw std::invalid_argument("strong balance needs 0 < c < 2");
  if (h.edge_count() == 0) throw std::invalid_argument("strong balance needs at least one edge");
  const int e_h = h.edge_count();
  const Rational rhs_den = Rational(h.vertex_count()) - c;
  StrongBalanceResult r;
  r.holds = true;
  std::uint64_t worst_mask = 0;
  Rational worst_ratio = Rational(e_h) / rhs_den;
  for_each_vertex_subset(
      h,
      [&](std::uint64_t mask, int w, int e) {
        if (e == 0) return;
        const Rational ratio = Rational(e) / (Rational(w) - c);
        if (ratio > worst_ratio ||
            (worst_mask != 0 && ratio == worst_ratio &&
             (w < std::popcount(worst_mask) ||
              (w == std::popcount(worst_mask) && lex_less_same_size(mask, worst_mask))))) {
          worst_ratio = ratio;
          worst_mask = mask;
        }
      },
      limits.max_vertices);
  if (worst_mask != 0) {
    r.holds = false;
    r.witness = mask_to_vertices(worst_mask);
  }
  return r;
}

std::optional<Rational> max_strongly_balanced_c(const Graph& h, const SearchLimits& limits) {
  if (h.edge_count() == 0) throw std::invalid_argument("strong balance needs at least one edge");
  const int e_h = h.edge_count();
  const int v_h = h.vertex_count();
  // Each proper W gives c <= (e_H |W| - e_W v_H) / (e_H - e_W); the induced
  // edge count is the binding choice for a fixed W. A W carrying every edge
  // with |W| < v(H) violates for all c.
  Rational best(2);
  bool impossible = false;
  for_each_vertex_subset(
      h,
      [&](std::uint64_t, int w, int e) {
        if (e == 0) return;
        if (e == e_h) {
          if (w < v_h) impossible = true;
          return;
        }
        const Rational bound(static_cast<long long>(e_h) * w - static_cast<long long>(e) * v_h,
                             e_h - e);
        if (bound < best) best = bound;
      },
      limits.max_vertices);
  if (impossible || best <= 0) return std::nullopt;
  return best;
}

long double dense_diagnostic(const Graph& h) {
  if (h.vertex_count() < 2) throw std::invalid_argument("dense diagnostic needs v(H) >= 2");
  return static_cast<long double>(h.edge_count()) /
         (static_cast<long double>(h.vertex_count()) * std::log(static_cast<long double>(h.vertex_count())));
}

DelocalizationResult is_delocalized(const Graph& h, const BigInt& n, const ToleranceConfig& cfg) {
  if (n < 3) throw std::invalid_argument("delocalization needs n >= 3");
  DelocalizationResult r;
  r.alpha_0 = alpha_q(h, Rational(0), cfg.limits).alpha;
  r.alpha_q = alpha_q(h, cfg.deloc_q, cfg.limits).alpha;
  r.gap = to_long_double(Rational(r.alpha_q - r.alpha_0)) * log_big(n);
  r.holds = r.gap <= cfg.deloc_C;
  return r;
}

long double almost_balanced_gap(const Graph& h, const BigInt& n, const Rational& q, const Rational& q2,
                                const SearchLimits& limits) {
  if (q <= 0 || q2 >= 1 || q > q2) throw std::invalid_argument("need 0 < q <= q' < 1");
  return std::exp(psi_q(h, n, q, limits).log_psi - psi_q(h, n, q2, limits).log_psi);
}

namespace {

long double flat_ratio(long double lambda_lo, long double lambda_hi) {
  if (lambda_lo == 0) throw DegenerateGap("lambda_q = 0 (psi_q = 1)");
  return lambda_hi / lambda_lo;
}

}  // namespace

long double first_moment_flat_gap(const Graph& h, const BigInt& n, const Rational& q,
                                  const Rational& q2, const SearchLimits& limits) {
  if (q <= 0 || q2 >= 1 || q > q2) throw std::invalid_argument("need 0 < q <= q' < 1");
  return flat_ratio(-psi_q(h, n, q, limits).log_psi, -psi_q(h, n, q2, limits).log_psi);
}

namespace {

// log M_{H|J} / log M_H over every J with exactly m edges (the maximum over
// e(J) >= m sits there, since M_{H|J} only shrinks as J grows).
std::optional<std::pair<long double, std::vector<Edge>>> extension_ratio(const Graph& h,
                                                                          const BigInt& n, int m,
                                                                          std::uint64_t budget) {
  const int e = h.edge_count();
  if (binomial(e, static_cast<std::uint64_t>(m)) > budget) return std::nullopt;
  const long double log_m_h = log_copy_count(h, n);
  if (log_m_h <= 0) return std::nullopt;
  struct Memo {
    long double log_m_j;
    long double log_m_jh;
  };
  std::map<CanonicalForm, Memo> memo;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  long double best = -1;
  std::vector<Edge> witness;
  while (true) {
    const Graph j = h.edge_subgraph(idx);
    const CanonicalForm form = canonical_form(j);
    auto it = memo.find(form);
    if (it == memo.end()) {
      const long double log_m_j =
          log_falling_factorial(n, static_cast<std::uint64_t>(j.vertex_count())) -
          log_big(form.automorphism_order);
      const long double log_m_jh = log_big(count_copies_in(j, h));
      it = memo.emplace(form, Memo{log_m_j, log_m_jh}).first;
    }
    const long double ratio = (log_m_h + it->second.log_m_jh - it->second.log_m_j) / log_m_h;
    if (ratio > best) {
      best = ratio;
      witness.clear();
      for (int i : idx) witness.push_back(h.edges()[static_cast<std::size_t>(i)]);
    }
    int i = m - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == e - m + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < m; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
  }
  return std::make_pair(best, witness);
}

}  // namespace

StableGap first_moment_stable_gap(const Graph& h, const BigInt& n, const Rational& delta,
                                  const ToleranceConfig& cfg) {
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("need 0 < delta < 1");
  const long double lambda_1 = -psi_q(h, n, Rational(1), cfg.limits).log_psi;
  const long double lambda_d = -psi_q(h, n, Rational(1) - delta, cfg.limits).log_psi;
  if (lambda_1 == 0) throw DegenerateGap("lambda_1 = 0 (psi_1 = 1)");
  StableGap r;
  r.gap = lambda_d / lambda_1;
  const int m = min_edges_for(h, Rational(1) - delta);
  if (auto ext = extension_ratio(h, n, m, cfg.stable_subset_budget)) {
    r.extension_ratio = ext->first;
    r.extension_witness = std::move(ext->second);
  }
  return r;
}

SpreadResult spread_certificate(const Graph& h, const BigInt& n, const Rational& delta, int edge_cap) {
  if (delta <= 0 || delta > 1) throw std::invalid_argument("need 0 < delta <= 1");
  const int m = min_edges_for(h, delta);
  SpreadResult r;
  bool first = true;
  for (const SubgraphClass& cls : enumerate_subgraphs(h, m, edge_cap)) {
    const long double log_m_j =
        log_falling_factorial(n, static_cast<std::uint64_t>(cls.form.vertex_count)) -
        log_big(cls.form.automorphism_order);
    const long double value =
        (std::log(static_cast<long double>(cls.occurrences)) - log_m_j) / cls.form.edge_count();
    if (first || value > r.log_pbar) {
      r.log_pbar = value;
      r.witness = cls.form;
      first = false;
    }
  }
  r.pbar = std::exp(r.log_pbar);
  return r;
}

long double nothing_regime_bound(const Graph& h, const BigInt& n, const Rational& delta, int edge_cap) {
  return 3 * spread_certificate(h, n, delta, edge_cap).pbar / to_long_double(delta);
}

const char* to_string(AonRegime regime) {
  switch (regime) {
    case AonRegime::kLinear:
      return "linear";
    case AonRegime::kExponential:
      return "exponential";
    case AonRegime::kNoneDetected:
      return "none-detected";
  }
  return "unknown";
}

const ConditionEntry* ClassificationReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ClassificationReport aon_verdict(const Graph& h, const BigInt& n, const ToleranceConfig& cfg) {
  ClassificationReport report;
  report.n = n;
  report.vertices = h.vertex_count();
  report.edges = h.edge_count();
  report.log_p1m = log_p1m(h, n);
  const long double log_n = log_big(n);

  std::map<Rational, PsiResult> psi_cache;
  std::string psi_error;
  auto psi = [&](const Rational& q) -> const PsiResult* {
    if (!psi_error.empty()) return nullptr;
    auto it = psi_cache.find(q);
    if (it != psi_cache.end()) return &it->second;
    try {
      return &psi_cache.emplace(q, psi_q(h, n, q, cfg.limits)).first->second;
    } catch (const BudgetExceeded& e) {
      psi_error = e.what();
      return nullptr;
    }
  };

  auto add = [&](ConditionEntry entry) -> const ConditionEntry& {
    report.conditions.push_back(std::move(entry));
    return report.conditions.back();
  };

  const BalanceResult bal = is_balanced(h, cfg.limits);
  add({"balanced", "is_balanced", bal.holds, to_long_double(bal.density_ratio),
       bal.holds ? "H attains the maximum density" : "denser vertex set " + join_vertices(bal.witness)});

  const std::optional<Rational> c_star = max_strongly_balanced_c(h, cfg.limits);
  {
    ConditionEntry e{"strongly-balanced", "max_strongly_balanced_c", c_star.has_value(), std::nullopt, ""};
    if (c_star) {
      e.gap = to_long_double(*c_star);
      e.certificate = "supremum c = " + format_rational(*c_star);
    } else {
      const StrongBalanceResult sb = is_strongly_balanced(h, Rational(1, 1000), cfg.limits);
      e.certificate = "violated for every c > 0; witness " + join_vertices(sb.witness);
    }
    add(e);
  }

  {
    ConditionEntry e{"sparse-size", "aon_verdict", false, std::nullopt, ""};
    const long double loglog = log_n > 1 ? std::log(log_n) : 0;
    if (c_star && loglog > 0) {
      const long double bound = to_long_double(*c_star) * log_n / (3 * loglog);
      e.gap = static_cast<long double>(h.vertex_count() + h.edge_count()) / bound;
      e.holds = *e.gap <= 1;
      e.certificate = "v+e = " + std::to_string(h.vertex_count() + h.edge_count()) +
                      " against c log n / (3 log log n) = " + fixed(bound);
    } else {
      e.certificate = c_star ? "log log n <= 0" : "requires strong balance";
    }
    add(e);
  }

  {
    const long double diag = dense_diagnostic(h);
    add({"dense", "dense_diagnostic", diag >= cfg.dense_threshold, diag,
         "e/(v log v) against threshold " + fixed(cfg.dense_threshold)});
  }

  {
    const DelocalizationResult d = is_delocalized(h, n, cfg);
    add({"delocalized", "is_delocalized", d.holds, d.gap,
         "alpha_0 = " + format_rational(d.alpha_0) + ", alpha_" + format_rational(cfg.deloc_q) + " = " +
             format_rational(d.alpha_q) + ", C = " + fixed(cfg.deloc_C)});
  }

  {
    ConditionEntry e{"almost-balanced", "almost_balanced_gap", std::nullopt, std::nullopt, ""};
    long double worst = 0;
    std::string detail;
    bool ok = true;
    for (const auto& [q, q2] : cfg.flat_pairs) {
      const PsiResult* a = psi(q);
      const PsiResult* b = psi(q2);
      if (!a || !b) {
        ok = false;
        break;
      }
      const long double ratio = std::exp(a->log_psi - b->log_psi);
      detail += (detail.empty() ? "" : "; ") + std::string("psi_") + format_rational(q) + "/psi_" +
                format_rational(q2) + " = " + fixed(ratio);
      worst = std::max(worst, ratio);
    }
    if (ok) {
      e.gap = worst;
      e.holds = worst <= 1 + cfg.ratio_tol;
      e.certificate = detail + " (configured pairs only)";
    } else {
      e.certificate = "psi unavailable: " + psi_error;
    }
    add(e);
  }

  {
    ConditionEntry e{"first-moment-flat", "first_moment_flat_gap", std::nullopt, std::nullopt, ""};
    long double worst = 0;
    std::string detail;
    bool ok = true;
    for (const auto& [q, q2] : cfg.flat_pairs) {
      const PsiResult* a = psi(q);
      const PsiResult* b = psi(q2);
      if (!a || !b) {
        ok = false;
        e.certificate = "psi unavailable: " + psi_error;
        break;
      }
      if (a->log_psi == 0) {
        ok = false;
        e.certificate = "degenerate: lambda_" + format_rational(q) + " = 0";
        break;
      }
      const long double ratio = b->log_psi / a->log_psi;
      detail += (detail.empty() ? "" : "; ") + std::string("lambda_") + format_rational(q2) + "/lambda_" +
                format_rational(q) + " = " + fixed(ratio);
      worst = std::max(worst, ratio);
    }
    if (ok) {
      e.gap = worst;
      e.holds = worst <= 1 + cfg.ratio_tol;
      e.certificate = detail + " (configured pairs only)";
    }
    add(e);
  }

  {
    ConditionEntry e{"first-moment-stable", "first_moment_stable_gap", std::nullopt, std::nullopt, ""};
    const PsiResult* one = psi(Rational(1));
    const PsiResult* below = psi(Rational(1) - cfg.stable_delta);
    if (!one || !below) {
      e.certificate = "psi unavailable: " + psi_error;
    } else if (one->log_psi == 0) {
      e.certificate = "degenerate: lambda_1 = 0";
    } else {
      e.gap = below->log_psi / one->log_psi;
      e.holds = *e.gap >= 1 - cfg.ratio_tol;
      e.certificate = "lambda_" + format_rational(Rational(1) - cfg.stable_delta) + "/lambda_1 at delta = " +
                      format_rational(cfg.stable_delta) + " (fixed-n proxy)";
      const int m = min_edges_for(h, Rational(1) - cfg.stable_delta);
      if (auto ext = extension_ratio(h, n, m, cfg.stable_subset_budget)) {
        e.certificate += "; max log M_{H|J}/log M_H = " + fixed(ext->first) + " at J = " + join_edges(ext->second);
      } else {
        e.certificate += "; extension form skipped (subset budget)";
      }
    }
    add(e);
  }

  {
    ConditionEntry e{"spread", "spread_certificate", std::nullopt, std::nullopt, ""};
    ConditionEntry b{"nothing-regime-bound", "nothing_regime_bound", std::nullopt, std::nullopt, ""};
    try {
      const SpreadResult s = spread_certificate(h, n, cfg.spread_delta, cfg.subgraph_edge_cap);
      e.gap = s.pbar;
      e.certificate = "delta = " + format_rational(cfg.spread_delta) + ", witness " + describe(s.witness);
      const long double bound = 3 * s.pbar / to_long_double(cfg.spread_delta);
      b.gap = bound;
      b.certificate = bound >= 1 ? "vacuous at this n (bound >= 1)" : "p above this bound is in the nothing regime";
    } catch (const BudgetExceeded& ex) {
      e.certificate = ex.what();
      b.certificate = ex.what();
    }
    add(e);
    add(b);
  }

  auto holds = [&](const char* name) {
    const ConditionEntry* c = report.find(name);
    return c && c->holds.value_or(false);
  };
  auto failing = [&](std::initializer_list<const char*> names) {
    std::vector<std::string> out;
    for (const char* name : names) {
      if (!holds(name)) out.emplace_back(name);
    }
    return out;
  };

  AonVerdict& v = report.verdict;
  const auto sparse_fail = failing({"strongly-balanced", "sparse-size"});
  const auto dense_fail = failing({"dense", "delocalized", "almost-balanced"});
  const auto exp_fail = failing({"first-moment-flat", "first-moment-stable"});
  if (sparse_fail.empty()) {
    v.regime = AonRegime::kLinear;
    v.route = "sparse-strongly-balanced";
    v.log_predicted_threshold = report.log_p1m;
  } else if (dense_fail.empty()) {
    v.regime = AonRegime::kLinear;
    v.route = "dense-almost-balanced";
    v.log_predicted_threshold = psi(cfg.deloc_q)->log_psi;
  } else if (exp_fail.empty()) {
    v.regime = AonRegime::kExponential;
    v.route = "exponential-flat-stable";
    v.log_predicted_threshold = report.log_p1m;
  } else {
    v.regime = AonRegime::kNoneDetected;
    v.route = "none";
    for (const auto* list : {&exp_fail, &dense_fail, &sparse_fail}) {
      for (const auto& name : *list) v.failing_conditions.push_back(name);
    }
  }
  if (v.log_predicted_threshold) v.predicted_threshold = std::exp(*v.log_predicted_threshold);

  report.notes.push_back(
      "none-detected means no sufficient condition checked here could be confirmed; it does not assert "
      "that the transition is absent");
  report.notes.push_back("first-moment-stable is checked at one delta for this n only");
  report.notes.push_back("almost-balanced and first-moment-flat are checked on the configured (q, q') pairs only");
  return report;
}

}  // namespace planted

#include "planted/acceptance.hpp"

#include "planted/canonical.hpp"
#include "planted/classify.hpp"
#include "planted/copies.hpp"
#include "planted/errors.hpp"
#include "planted/overlap.hpp"
#include "planted/report.hpp"
#include "planted/sim.hpp"
#include "planted/thresholds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace planted {

using namespace families;

namespace {

// Pinned tolerances.
constexpr long double kSigmas = 3;                 // Monte Carlo margins
constexpr long double kIdentityRelTol = 1e-12L;    // D + I = K log(1/p)
constexpr long double kEndpointTol = 1e-12L;       // curve endpoints
constexpr long double kCertificateLevel = 0.01L;   // moment-sum premise
constexpr long double kFirstMomentMmse = 0.3L;
constexpr long double kSecondMomentMmse = 0.7L;
constexpr long double kPlantingEpsilon = 0.1L;

std::string fixed(long double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, x);
  return buf;
}

long double combined(long double a, long double b) { return std::sqrt(a * a + b * b); }

std::vector<Edge> image(const Graph& h, const std::vector<Vertex>& map) {
  std::vector<Edge> out;
  for (const auto& [a, b] : h.edges()) {
    Vertex x = map[a], y = map[b];
    if (x > y) std::swap(x, y);
    out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every injective map V(H) -> [n], deduplicated by edge image.
std::set<std::vector<Edge>> brute_force_copies(const Graph& h, int n) {
  std::set<std::vector<Edge>> out;
  std::vector<Vertex> map(h.vertex_count());
  std::vector<bool> used(n, false);
  std::function<void(int)> rec = [&](int i) {
    if (i == h.vertex_count()) {
      out.insert(image(h, map));
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = true;
      map[i] = x;
      rec(i + 1);
      used[x] = false;
    }
  };
  rec(0);
  return out;
}

int overlap_size(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  int c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c, ++i, ++j;
    }
  }
  return c;
}

// Overlap law over all ordered pairs of copies.
std::map<int, Rational> pair_overlap_law(const Graph& h, int n) {
  const auto copies = brute_force_copies(h, n);
  std::map<int, BigInt> counts;
  for (const auto& a : copies) {
    for (const auto& b : copies) ++counts[overlap_size(a, b)];
  }
  const BigInt total = BigInt(copies.size()) * BigInt(copies.size());
  std::map<int, Rational> out;
  for (const auto& [ell, c] : counts) out[ell] = Rational(c, total);
  return out;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
  void note(const std::string& s) {
    if (!pass) return;
    if (detail.tellp() > 0) detail << "; ";
    detail << s;
  }
};

Outcome copy_count_oracle() {
  Outcome o;
  int cases = 0;
  for (const auto& [name, h] : pattern_corpus()) {
    for (int n = h.vertex_count(); n <= 8; ++n) {
      const BigInt fast = count_copies_in_complete(h, n);
      const BigInt slow = brute_force_copies(h, n).size();
      ++cases;
      if (fast != slow) o.fail(name + " n=" + std::to_string(n) + ": " + fast.str() + " vs " + slow.str());
    }
  }
  o.note(std::to_string(cases) + " (H, n) cases agree exactly");
  return o;
}

Outcome matching_count() {
  Outcome o;
  const BigInt m = count_copies_in_complete(perfect_matching(8), 8);
  const BigInt formula = factorial(8) / (BigInt(16) * factorial(4));
  if (m != 105 || formula != 105) o.fail("M = " + m.str() + ", formula " + formula.str());
  o.note("M = " + m.str());
  return o;
}

Outcome overlap_exactness() {
  Outcome o;
  struct Case {
    std::string name;
    Graph h;
    int n;
    std::map<int, Rational> expected;
  };
  const std::vector<Case> cases{
      {"K3", clique(3), 4, {{3, Rational(1, 4)}, {1, Rational(3, 4)}}},
      {"matching(4)", perfect_matching(4), 4, {{2, Rational(1, 3)}, {0, Rational(2, 3)}}},
  };
  for (const Case& c : cases) {
    const auto dist = prior_overlap_distribution(c.h, c.n, OverlapMethod::kEnumerate);
    const auto pairs = pair_overlap_law(c.h, c.n);
    std::map<int, Rational> got;
    for (int ell : dist.support()) got[ell] = dist.at(ell);
    if (got != c.expected) o.fail(c.name + ": enumeration differs from the expected law");
    if (pairs != c.expected) o.fail(c.name + ": pair enumeration differs from the expected law");
    std::string law;
    for (const auto& [ell, pr] : got) law += (law.empty() ? "" : ", ") + std::to_string(ell) + ": " + format_rational(pr);
    o.note(c.name + " n=" + std::to_string(c.n) + " {" + law + "}");
  }
  return o;
}

Outcome threshold_landscape(const AcceptanceOptions& options) {
  Outcome o;
  const auto cases = golden_cases();
  std::vector<ThresholdCurve> curves;
  for (const GoldenCase& c : cases) {
    curves.push_back(threshold_curve(c.pattern, c.n, c.q_grid));
    const std::string text = thresholds_json(c.pattern, curves.back()).dump(2) + "\n";
    const std::string path = options.golden_dir + "/" + c.file;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      o.fail("missing golden file " + c.file);
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (buf.str() != text) o.fail(c.file + " differs from the computed report");
  }

  // sun(5) at n = 100.
  {
    const GoldenCase& c = cases[0];
    const ThresholdCurve& curve = curves[0];
    const CanonicalForm k5 = canonical_form(clique(5));
    for (const CurvePoint& pt : curve.points) {
      if (pt.q > Rational(2, 3)) continue;
      if (!pt.psi || !(pt.psi->witness == k5)) o.fail("sun(5): psi witness at q=" + format_rational(pt.q) + " is not K5");
    }
    const long double a = log_p1m(clique(5), c.n);
    const long double b = log_p1m(c.pattern, c.n);
    if (!(a > b)) o.fail("sun(5): p1M(K5) <= p1M(sun(5))");
    o.note("sun(5): witness K5 for q <= 2/3, p1M(K5) = " + real_text(std::exp(a)) + " > p1M(sun5) = " +
           real_text(std::exp(b)));
  }

  // [K8 + 4 K4] at n = 100.
  {
    const ThresholdCurve& curve = curves[1];
    const CanonicalForm k8 = canonical_form(clique(8));
    const PsiResult* at0 = nullptr;
    const PsiResult* at_half = nullptr;
    for (const CurvePoint& pt : curve.points) {
      if (pt.q == 0 && pt.psi) at0 = &*pt.psi;
      if (pt.q == Rational(1, 2) && pt.psi) at_half = &*pt.psi;
    }
    if (!at0 || !at_half) {
      o.fail("K8+4K4: psi unavailable (" + curve.psi_error + ")");
    } else {
      if (!(at0->witness == k8)) o.fail("K8+4K4: psi_0 witness is not K8");
      const Rational ratio0(at0->witness.vertex_count, at0->witness.edge_count());
      const Rational ratio(at_half->witness.vertex_count, at_half->witness.edge_count());
      const std::string shape = std::to_string(at_half->witness.vertex_count) + " vertices, " +
                                std::to_string(at_half->witness.edge_count()) + " edges";
      if (!(ratio > ratio0)) {
        o.fail("K8+4K4: psi_1/2 witness (" + shape + ") has v/e = " + format_rational(ratio) +
               ", not above psi_0's " + format_rational(ratio0) +
               "; K8 alone has 28 >= ceil(52/2) edges so it stays admissible at q = 1/2");
      } else {
        o.note("K8+4K4: psi_1/2 witness " + shape);
      }
    }
  }
  return o;
}

Outcome classification_verdicts() {
  Outcome o;
  const BigInt n("1000000");
  const Rational one(1);
  std::vector<std::pair<std::string, Graph>> balanced{{"C5", cycle(5)}};
  for (int k = 2; k <= 7; ++k) balanced.emplace_back("path(" + std::to_string(k) + ")", path(k));
  for (const auto& [name, g] : balanced) {
    if (!is_strongly_balanced(g, one).holds) o.fail(name + " not strongly balanced at c=1");
  }
  o.note("C5 and path(2..7) strongly balanced at c=1");

  const Graph co = cycle_with_out_edges(6);
  if (is_strongly_balanced(co, one).holds) o.fail("cycle_out(6) strongly balanced at c=1");
  if (max_strongly_balanced_c(co)) o.fail("cycle_out(6) strongly balanced for some c");
  const ClassificationReport r = aon_verdict(co, n);
  if (r.verdict.regime != AonRegime::kExponential) {
    o.fail(std::string("cycle_out(6): regime ") + to_string(r.verdict.regime));
  }
  if (r.verdict.route == "sparse-strongly-balanced" || r.verdict.route == "dense-almost-balanced") {
    o.fail("cycle_out(6) certified linear via " + r.verdict.route);
  }
  o.note(std::string("cycle_out(6): ") + to_string(r.verdict.regime) + " via " + r.verdict.route);

  const std::vector<int> sizes{12, 4};
  const ClassificationReport two = aon_verdict(disjoint_cliques(sizes), n);
  const ConditionEntry* flat = two.find("first-moment-flat");
  if (!flat || !flat->gap || !flat->holds) {
    o.fail("K12+K4: first-moment-flat not evaluated");
  } else {
    if (*flat->holds || !(*flat->gap > 1.1L)) o.fail("K12+K4: flat gap " + fixed(*flat->gap));
    o.note("K12+K4: flat gap " + fixed(*flat->gap) + ", regime " + to_string(two.verdict.regime));
  }
  if (two.verdict.regime != AonRegime::kNoneDetected) o.fail("K12+K4 certified");
  return o;
}

Outcome identity_suite(const AcceptanceOptions& options) {
  Outcome o;
  struct Case {
    std::string name;
    Graph h;
    int n;
  };
  const std::vector<Case> cases{{"K3", clique(3), 6}, {"K4", clique(4), 8}, {"path3", path(3), 7}, {"C4", cycle(4), 7}};
  const std::vector<long double> ps{0.1L, 0.3L, 0.5L, 0.7L, 0.9L};
  const std::uint64_t per = 500;
  std::uint64_t instances = 0;
  long double worst_di = 0;
  std::uint64_t stream = 0;
  for (const Case& c : cases) {
    const int k = c.h.edge_count();
    for (long double p : ps) {
      const std::uint64_t seed = derive_seed(options.seed, 600 + stream++);
      const auto records = run_trials(c.h, c.n, p, per, seed, options.jobs);
      const long double target = k * std::log(1 / p);
      for (std::uint64_t i = 0; i < per; ++i) {
        const PlantedInstance inst = sample_instance(c.h, c.n, p, derive_seed(seed, i));
        const PosteriorSummary post = posterior_exact(c.h, inst.observation);
        const auto m = post.marginals();
        Rational total = 0;
        for (const Rational& x : m) total += x;
        if (total != k) o.fail(c.name + ": sum of marginals " + format_rational(total));
        for (int a = 0; a < c.n; ++a) {
          for (int b = a + 1; b < c.n; ++b) {
            if (!inst.observation.has_edge(a, b) && m[pair_index(c.n, a, b)] != 0) {
              o.fail(c.name + ": positive marginal off Y");
            }
          }
        }
        const Rational mmse = post.conditional_mmse();
        if (mmse < 0 || mmse > k) o.fail(c.name + ": conditional MMSE outside [0, K]");
        const TrialRecord& r = records[i];
        if (r.z != post.copies) o.fail(c.name + ": trial record disagrees with the posterior");
        const long double err = std::fabs(r.d_sample + r.i_sample - target) / std::max(1.0L, target);
        worst_di = std::max(worst_di, err);
        if (err > kIdentityRelTol) o.fail(c.name + ": D + I off by " + real_text(err));
        if (!(r.conditional_mmse >= 0 && r.conditional_mmse <= k)) o.fail(c.name + ": MMSE sample outside [0, K]");
        ++instances;
      }
    }
  }
  o.note(std::to_string(instances) + " instances; worst relative D+I error " + real_text(worst_di));
  return o;
}

Outcome exhaustive_oracle(const AcceptanceOptions& options) {
  Outcome o;
  const std::vector<std::pair<std::string, std::pair<Graph, int>>> cases{{"K3", {clique(3), 5}},
                                                                        {"path2", {path(2), 4}}};
  const std::vector<long double> ps{0.1L, 0.3L, 0.5L, 0.8L};
  std::uint64_t stream = 0;
  long double worst = 0;
  for (const auto& [name, hn] : cases) {
    const auto& [h, n] = hn;
    for (long double p : ps) {
      const ExactExpectations exact = exhaustive_expectations(h, n, p);
      const MmseEstimate mc =
          mmse_monte_carlo(h, n, p, 2000, derive_seed(options.seed, 700 + stream++),
                           MmseEstimator::kConditionalVariance, options.jobs);
      const long double dev = std::fabs(mc.mean - exact.mmse);
      const long double z = mc.stderr_ > 0 ? dev / mc.stderr_ : (dev < 1e-12L ? 0 : INFINITY);
      worst = std::max(worst, z);
      if (z > kSigmas) {
        o.fail(name + " p=" + real_text(p) + ": exact " + fixed(exact.mmse, 6) + ", MC " + fixed(mc.mean, 6) +
               " +- " + fixed(mc.stderr_, 6));
      }
    }
  }
  o.note("8 points, worst |MC - exact| / stderr = " + fixed(worst, 2));
  return o;
}

std::vector<long double> even_grid(int points) {
  std::vector<long double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(static_cast<long double>(i) / (points - 1));
  return grid;
}

Outcome monotonicity(const AcceptanceOptions& options) {
  Outcome o;
  const Graph h = clique(4);
  const int n = 12;
  const int k = h.edge_count();
  const auto curve = mmse_curve(h, n, even_grid(21), 2000, derive_seed(options.seed, 800), options.jobs);
  long double worst = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto& a = curve[i].estimate;
    const auto& b = curve[i + 1].estimate;
    const long double drop = a.mean - b.mean;
    const long double margin = kSigmas * combined(a.stderr_, b.stderr_);
    worst = std::max(worst, margin > 0 ? drop / margin : (drop > 0 ? INFINITY : 0));
    if (drop > margin) o.fail("decrease between p=" + real_text(a.p) + " and p=" + real_text(b.p));
  }
  const long double big_n = n * (n - 1) / 2.0L;
  const long double top = k * (1 - k / big_n);
  if (std::fabs(curve.front().estimate.mean) > kEndpointTol) o.fail("MMSE(0) = " + real_text(curve.front().estimate.mean));
  if (std::fabs(curve.back().estimate.mean - top) > kEndpointTol * top) {
    o.fail("MMSE(1) = " + real_text(curve.back().estimate.mean) + ", expected " + real_text(top));
  }
  o.note("21 points; largest drop / 3 sigma = " + fixed(worst, 3) + "; MMSE(1) = " + fixed(curve.back().estimate.mean, 6));
  return o;
}

Outcome clique_directional(const AcceptanceOptions& options) {
  Outcome o;
  const Graph h = clique(4);
  const int n = 12;
  const long double t = p1m(h, n);
  const long double lo_p = 0.5L * t;
  const long double hi_p = std::min(1.0L, 1.5L * t);
  const auto curve = mmse_curve(h, n, {lo_p, hi_p}, 2000, derive_seed(options.seed, 900), options.jobs);
  const auto& lo = curve[0];
  const auto& hi = curve[1];
  if (!(lo.normalized + kSigmas * lo.normalized_stderr < 0.5L)) o.fail("below threshold not < 1/2 by 3 sigma");
  if (!(hi.normalized - kSigmas * hi.normalized_stderr > 0.5L)) o.fail("above threshold not > 1/2 by 3 sigma");
  o.note("p1M = " + fixed(t, 5) + "; MMSE/K = " + fixed(lo.normalized) + " +- " + fixed(lo.normalized_stderr) +
         " at " + fixed(lo_p) + ", " + fixed(hi.normalized) + " +- " + fixed(hi.normalized_stderr) + " at " +
         fixed(hi_p));
  return o;
}

Outcome moment_coherence(const AcceptanceOptions& options) {
  Outcome o;
  const Graph h = clique(3);
  const int n = 8;
  const auto dist = prior_overlap_distribution(h, n);
  std::vector<long double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(i / 20.0L);
  const auto curve = mmse_curve(h, n, grid, 2000, derive_seed(options.seed, 1000), options.jobs);
  int first_hits = 0;
  int second_hits = 0;
  long double min_second = INFINITY;
  for (const auto& pt : curve) {
    const long double first = truncated_first_moment(dist, pt.p, Rational(1, 5)).sum;
    const long double second = truncated_second_moment(dist, pt.p, Rational(4, 5)).sum;
    min_second = std::min(min_second, second);
    if (first < kCertificateLevel) {
      ++first_hits;
      if (!(pt.normalized + kSigmas * pt.normalized_stderr < kFirstMomentMmse)) {
        o.fail("first-moment certificate at p=" + real_text(pt.p) + " but MMSE/K = " + fixed(pt.normalized));
      }
    }
    if (second < kCertificateLevel) {
      ++second_hits;
      if (!(pt.normalized - kSigmas * pt.normalized_stderr > kSecondMomentMmse)) {
        o.fail("second-moment certificate at p=" + real_text(pt.p) + " but MMSE/K = " + fixed(pt.normalized));
      }
    }
  }
  o.note("first-moment premise met at " + std::to_string(first_hits) + " of 20 grid p; second-moment premise met at " +
         std::to_string(second_hits) + " (smallest sum " + fixed(min_second) + ")");
  return o;
}

Outcome nishimori_planting(const AcceptanceOptions& options) {
  Outcome o;
  const Graph h = clique(3);
  std::uint64_t stream = 0;
  for (long double p : {0.2L, 0.5L}) {
    const NishimoriResult nr = nishimori_check(h, 6, p, 5000, derive_seed(options.seed, 1100 + stream++), options.jobs);
    const PlantingResult pr =
        planting_ratio_check(h, 6, p, 5000, derive_seed(options.seed, 1100 + stream++), kPlantingEpsilon, options.jobs);
    if (std::fabs(nr.z_score) > kSigmas) o.fail("p=" + real_text(p) + ": Nishimori z = " + fixed(nr.z_score, 2));
    if (!pr.holds) o.fail("p=" + real_text(p) + ": planting frequency " + fixed(pr.frequency));
    o.note("p=" + real_text(p) + ": z = " + fixed(nr.z_score, 2) + ", freq " + fixed(pr.frequency) + " <= " +
           fixed(pr.epsilon + kSigmas * pr.sigma));
  }
  return o;
}

Outcome bound_sandwich() {
  Outcome o;
  int checks = 0;
  for (const auto& [name, h] : pattern_corpus()) {
    for (int n = h.vertex_count(); n <= 10; ++n) {
      const auto dist = prior_overlap_distribution(h, n);
      for (int ell : dist.support()) {
        const Rational bound = count_bound_exact(h, h, ell, n);
        ++checks;
        if (bound < dist.at(ell)) o.fail(name + " n=" + std::to_string(n) + " l=" + std::to_string(ell));
      }
    }
  }
  o.note(std::to_string(checks) + " (H, n, l) triples");
  return o;
}

Outcome determinism(const AcceptanceOptions& options) {
  Outcome o;
  const Graph h = clique(4);
  const auto grid = even_grid(6);
  const std::uint64_t seed = derive_seed(options.seed, 1300);
  const std::string one = curve_csv(mmse_curve(h, 12, grid, 300, seed, 1));
  const std::string eight = curve_csv(mmse_curve(h, 12, grid, 300, seed, 8));
  if (one != eight) o.fail("CSV differs between 1 and 8 jobs");
  o.note("CSV sha1 " + git_blob_sha1(one) + " at 1 and 8 jobs");
  return o;
}

struct CriterionInfo {
  const char* name;
  double limit;
};

CriterionInfo info_of(int id) {
  switch (id) {
    case 1: return {"copy-count oracle", 10};
    case 2: return {"matching count", 0};
    case 3: return {"overlap exactness", 1};
    case 4: return {"threshold landscape", 60};
    case 5: return {"classification verdicts", 30};
    case 6: return {"exact identities", 60};
    case 7: return {"exhaustive MMSE oracle", 120};
    case 8: return {"MMSE monotonicity", 600};
    case 9: return {"clique AoN direction", 300};
    case 10: return {"moment certificates", 300};
    case 11: return {"Nishimori and planting", 120};
    case 12: return {"count bound sandwich", 60};
    case 13: return {"determinism", 0};
    default: throw std::invalid_argument("no criterion " + std::to_string(id));
  }
}

}  // namespace

std::vector<std::pair<std::string, Graph>> pattern_corpus() {
  return {{"K3", clique(3)},          {"K4", clique(4)},
          {"C4", cycle(4)},           {"C5", cycle(5)},
          {"path3", path(3)},         {"matching(4)", perfect_matching(4)},
          {"matching(6)", perfect_matching(6)}, {"sun(4)", sun(4)}};
}

std::vector<GoldenCase> golden_cases() {
  const std::vector<int> sizes{8, 4, 4, 4, 4};
  return {
      {"thresholds_sun5_n100.json", sun(5), BigInt(100),
       {Rational(0), Rational(1, 3), Rational(1, 2), Rational(3, 5), Rational(2, 3), Rational(7, 10), Rational(1)}},
      {"thresholds_k8_4k4_n100.json", disjoint_cliques(sizes), BigInt(100), {Rational(0), Rational(1, 2)}},
  };
}

std::string golden_text(const GoldenCase& c) {
  return thresholds_json(c.pattern, threshold_curve(c.pattern, c.n, c.q_grid)).dump(2) + "\n";
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "oracle") return {1, 2, 3, 7, 12};
  if (suite == "identities") return {6, 11};
  if (suite == "paper-examples") return {4, 5};
  if (suite == "statistics") return {8, 9, 10};
  if (suite == "determinism") return {13};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  throw std::invalid_argument("unknown suite: " + suite);
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  const CriterionInfo info = info_of(id);
  CriterionResult r;
  r.id = id;
  r.name = info.name;
  r.time_limit = info.limit;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = copy_count_oracle(); break;
      case 2: o = matching_count(); break;
      case 3: o = overlap_exactness(); break;
      case 4: o = threshold_landscape(options); break;
      case 5: o = classification_verdicts(); break;
      case 6: o = identity_suite(options); break;
      case 7: o = exhaustive_oracle(options); break;
      case 8: o = monotonicity(options); break;
      case 9: o = clique_directional(options); break;
      case 10: o = moment_coherence(options); break;
      case 11: o = nishimori_planting(options); break;
      case 12: o = bound_sandwich(); break;
      case 13: o = determinism(options); break;
    }
  } catch (const std::exception& e) {
    o.fail(std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = o.pass;
  r.detail = o.detail.str();
  if (info.limit > 0 && r.seconds > info.limit) {
    r.pass = false;
    r.detail += "; over the " + fixed(info.limit, 0) + " s limit";
  }
  return r;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s [%2d] %s (%.2f s): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace planted

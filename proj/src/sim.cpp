#include "planted/sim.hpp"

#include "planted/copies.hpp"
#include "planted/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace planted {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

int pair_index(int n, Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

PlantedInstance sample_instance(const Graph& h, int n, long double p, std::uint64_t seed) {
  if (h.vertex_count() > n) throw std::invalid_argument("pattern has more vertices than n");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  PlantedInstance inst;
  inst.n = n;
  inst.pattern = h;
  inst.p = p;
  inst.seed = seed;
  for (const auto& [a, b] : h.edges()) {
    const Vertex x = perm[static_cast<std::size_t>(a)];
    const Vertex y = perm[static_cast<std::size_t>(b)];
    inst.hidden.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(inst.hidden.begin(), inst.hidden.end());
  std::bernoulli_distribution coin(static_cast<double>(p));
  std::vector<Edge> all = inst.hidden;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (std::binary_search(inst.hidden.begin(), inst.hidden.end(), Edge{a, b})) continue;
      if (coin(rng)) inst.noise.emplace_back(a, b);
    }
  }
  all.insert(all.end(), inst.noise.begin(), inst.noise.end());
  inst.observation = Graph(n, std::move(all));
  return inst;
}

Rational PosteriorSummary::marginal(int pair) const {
  return Rational(BigInt(containing.at(static_cast<std::size_t>(pair))), BigInt(copies));
}

std::vector<Rational> PosteriorSummary::marginals() const {
  std::vector<Rational> out;
  out.reserve(containing.size());
  for (std::size_t i = 0; i < containing.size(); ++i) out.push_back(marginal(static_cast<int>(i)));
  return out;
}

Rational PosteriorSummary::conditional_mmse() const {
  BigInt num = 0;
  for (std::uint64_t c : containing) num += BigInt(c) * (copies - c);
  return Rational(num, BigInt(copies) * copies);
}

long double PosteriorSummary::conditional_mmse_value() const {
  // Each term c (Z - c) <= Z^2 / 4 < 2.5e13 under the copy budget.
  long double num = 0;
  for (std::uint64_t c : containing) num += static_cast<long double>(c) * static_cast<long double>(copies - c);
  const long double z = static_cast<long double>(copies);
  return num / (z * z);
}

long double PosteriorSummary::signal_dot_mmse(const std::vector<Edge>& signal) const {
  std::uint64_t hit = 0;
  for (const auto& [a, b] : signal) hit += containing.at(static_cast<std::size_t>(pair_index(n, a, b)));
  return static_cast<long double>(edges) - static_cast<long double>(hit) / static_cast<long double>(copies);
}

namespace {

void check_limits(const Graph& y, const SimLimits& limits) {
  if (y.vertex_count() > limits.max_n) {
    throw BudgetExceeded("posterior enumeration limited to n <= " + std::to_string(limits.max_n));
  }
}

PosteriorSummary posterior_with(const CopyFinder& finder, const Graph& y, const SimLimits& limits) {
  check_limits(y, limits);
  const int n = y.vertex_count();
  const Graph& h = finder.pattern();
  PosteriorSummary s;
  s.n = n;
  s.edges = h.edge_count();
  s.containing.assign(static_cast<std::size_t>(n * (n - 1) / 2), 0);
  bool over = false;
  finder.for_each(y, [&](std::span<const Vertex> emb) {
    if (++s.copies > limits.max_copies) {
      over = true;
      return false;
    }
    for (const auto& [a, b] : h.edges()) {
      ++s.containing[static_cast<std::size_t>(pair_index(n, emb[static_cast<std::size_t>(a)],
                                                          emb[static_cast<std::size_t>(b)]))];
    }
    return true;
  });
  if (over) throw BudgetExceeded("posterior exceeded " + std::to_string(limits.max_copies) + " copies");
  if (s.copies == 0) throw NoCopiesError("observation contains no copy of the pattern");
  return s;
}

// Copies number `wanted` (sorted indices below z) in enumeration order.
std::vector<std::vector<Edge>> fetch_copies(const CopyFinder& finder, const Graph& y,
                                            const std::vector<std::uint64_t>& wanted) {
  std::vector<std::uint64_t> order(wanted);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<std::vector<Edge>> found(order.size());
  std::uint64_t index = 0;
  std::size_t next = 0;
  finder.for_each(y, [&](std::span<const Vertex> emb) {
    if (next < order.size() && index == order[next]) {
      found[next] = copy_edges(finder.pattern(), emb);
      ++next;
    }
    ++index;
    return next < order.size();
  });
  std::vector<std::vector<Edge>> out;
  for (std::uint64_t w : wanted) {
    out.push_back(found[static_cast<std::size_t>(std::lower_bound(order.begin(), order.end(), w) - order.begin())]);
  }
  return out;
}

int overlap_size(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  std::vector<Edge> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<int>(common.size());
}

struct TrialContext {
  CopyFinder finder;
  long double log_m;
  int n;
  long double p;
  TrialOptions options;
};

TrialRecord trial_with(const TrialContext& ctx, std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t instance_seed = derive_seed(seed, index);
  const PlantedInstance inst = sample_instance(ctx.finder.pattern(), ctx.n, ctx.p, instance_seed);
  const PosteriorSummary post = posterior_with(ctx.finder, inst.observation, ctx.options.limits);
  const int k = ctx.finder.pattern().edge_count();
  TrialRecord r;
  r.z = post.copies;
  r.conditional_mmse = post.conditional_mmse_value();
  r.signal_dot_mmse = post.signal_dot_mmse(inst.hidden);
  r.log_z = std::log(static_cast<long double>(post.copies));
  r.i_sample = ctx.log_m - r.log_z;
  r.d_sample = ctx.p == 0 ? std::numeric_limits<long double>::infinity()
                          : r.log_z - ctx.log_m - static_cast<long double>(k) * std::log(ctx.p);
  if (ctx.options.nishimori) {
    Rng rng(derive_seed(instance_seed, 1));
    std::uniform_int_distribution<std::uint64_t> pick(0, post.copies - 1);
    const std::uint64_t first = pick(rng);
    const std::uint64_t second = pick(rng);
    const auto drawn = fetch_copies(ctx.finder, inst.observation, {first, second});
    r.signal_overlap = overlap_size(inst.hidden, drawn[0]);
    r.posterior_overlap = overlap_size(drawn[0], drawn[1]);
  }
  return r;
}

TrialContext make_context(const Graph& h, int n, long double p, const TrialOptions& options) {
  if (h.vertex_count() > n) throw std::invalid_argument("pattern has more vertices than n");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  if (n > options.limits.max_n) {
    throw BudgetExceeded("posterior enumeration limited to n <= " + std::to_string(options.limits.max_n));
  }
  return TrialContext{CopyFinder(h), log_big(count_copies_in_complete(h, n)), n, p, options};
}

void kahan_add(long double& sum, long double& carry, long double x) {
  if (!std::isfinite(x) || !std::isfinite(sum)) {
    sum += x;
    return;
  }
  const long double y = x - carry;
  const long double t = sum + y;
  carry = (t - sum) - y;
  sum = t;
}

template <typename Field>
SampleStats stats_of(const std::vector<TrialRecord>& records, Field field) {
  std::vector<long double> values;
  values.reserve(records.size());
  for (const TrialRecord& r : records) values.push_back(field(r));
  return summarize(values);
}

}  // namespace

PosteriorSummary posterior_exact(const Graph& h, const Graph& y, const SimLimits& limits) {
  return posterior_with(CopyFinder(h), y, limits);
}

std::vector<std::vector<Edge>> sample_posterior(const Graph& h, const Graph& y, int count, Rng& rng,
                                                const SimLimits& limits) {
  const CopyFinder finder(h);
  const PosteriorSummary post = posterior_with(finder, y, limits);
  std::uniform_int_distribution<std::uint64_t> pick(0, post.copies - 1);
  std::vector<std::uint64_t> wanted;
  for (int i = 0; i < count; ++i) wanted.push_back(pick(rng));
  return fetch_copies(finder, y, wanted);
}

TrialRecord run_trial(const Graph& h, int n, long double p, std::uint64_t seed, std::uint64_t index,
                      const TrialOptions& options) {
  return trial_with(make_context(h, n, p, options), seed, index);
}

std::vector<TrialRecord> run_trials(const Graph& h, int n, long double p, std::uint64_t count, std::uint64_t seed,
                                    int jobs, const TrialOptions& options) {
  const TrialContext ctx = make_context(h, n, p, options);
  std::vector<TrialRecord> out(count);
  if (jobs <= 0) jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  jobs = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = trial_with(ctx, seed, i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

SampleStats summarize(const std::vector<long double>& values) {
  SampleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  long double sum = 0;
  long double carry = 0;
  for (long double v : values) kahan_add(sum, carry, v);
  s.mean = sum / static_cast<long double>(values.size());
  if (!std::isfinite(s.mean) || values.size() < 2) return s;
  long double sq = 0;
  carry = 0;
  for (long double v : values) kahan_add(sq, carry, (v - s.mean) * (v - s.mean));
  s.stderr_ = std::sqrt(sq / static_cast<long double>(values.size() - 1) / static_cast<long double>(values.size()));
  return s;
}

const char* to_string(MmseEstimator estimator) {
  return estimator == MmseEstimator::kConditionalVariance ? "conditional-variance" : "signal-dot";
}

MmseEstimate mmse_monte_carlo(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                              MmseEstimator estimator, int jobs, const SimLimits& limits) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const auto records = run_trials(h, n, p, trials, seed, jobs, TrialOptions{false, limits});
  const SampleStats s = estimator == MmseEstimator::kConditionalVariance
                            ? stats_of(records, [](const TrialRecord& r) { return r.conditional_mmse; })
                            : stats_of(records, [](const TrialRecord& r) { return r.signal_dot_mmse; });
  return MmseEstimate{p, trials, s.mean, s.stderr_, estimator};
}

std::vector<MmseCurvePoint> mmse_curve(const Graph& h, int n, const std::vector<long double>& p_grid,
                                       std::uint64_t trials, std::uint64_t seed, int jobs, const SimLimits& limits) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const long double k = static_cast<long double>(h.edge_count());
  std::vector<MmseCurvePoint> out;
  for (std::size_t idx = 0; idx < p_grid.size(); ++idx) {
    const long double p = p_grid[idx];
    const auto records = run_trials(h, n, p, trials, derive_seed(seed, idx), jobs, TrialOptions{false, limits});
    MmseCurvePoint point;
    point.p = p;
    const SampleStats m = stats_of(records, [](const TrialRecord& r) { return r.conditional_mmse; });
    point.estimate = MmseEstimate{p, trials, m.mean, m.stderr_, MmseEstimator::kConditionalVariance};
    point.normalized = m.mean / k;
    point.normalized_stderr = m.stderr_ / k;
    point.d = stats_of(records, [](const TrialRecord& r) { return r.d_sample; });
    point.i = stats_of(records, [](const TrialRecord& r) { return r.i_sample; });
    out.push_back(point);
  }
  return out;
}

SampleStats kl_divergence_mc(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                             int jobs, const SimLimits& limits) {
  const auto records = run_trials(h, n, p, trials, seed, jobs, TrialOptions{false, limits});
  return stats_of(records, [](const TrialRecord& r) { return r.d_sample; });
}

SampleStats mutual_information_mc(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                                  int jobs, const SimLimits& limits) {
  const auto records = run_trials(h, n, p, trials, seed, jobs, TrialOptions{false, limits});
  return stats_of(records, [](const TrialRecord& r) { return r.i_sample; });
}

NishimoriResult nishimori_check(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                                int jobs, const SimLimits& limits) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const auto records = run_trials(h, n, p, trials, seed, jobs, TrialOptions{true, limits});
  NishimoriResult r;
  r.trials = trials;
  r.signal_posterior = stats_of(records, [](const TrialRecord& t) { return t.signal_overlap; }).mean;
  r.posterior_posterior = stats_of(records, [](const TrialRecord& t) { return t.posterior_overlap; }).mean;
  const SampleStats diff =
      stats_of(records, [](const TrialRecord& t) { return t.signal_overlap - t.posterior_overlap; });
  r.z_score = diff.stderr_ > 0 ? diff.mean / diff.stderr_ : 0;
  return r;
}

PlantingResult planting_ratio_check(const Graph& h, int n, long double p, std::uint64_t trials,
                                    std::uint64_t seed, long double epsilon, int jobs, const SimLimits& limits) {
  if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const auto records = run_trials(h, n, p, trials, seed, jobs, TrialOptions{false, limits});
  // Z <= eps M p^K, compared on the log scale.
  const long double log_mean_z =
      log_big(count_copies_in_complete(h, n)) + static_cast<long double>(h.edge_count()) * std::log(p);
  const long double cut = std::log(epsilon) + log_mean_z;
  std::uint64_t hits = 0;
  for (const TrialRecord& t : records) hits += t.log_z <= cut + 1e-12L * std::max(1.0L, std::fabs(cut)) ? 1 : 0;
  PlantingResult r;
  r.trials = trials;
  r.epsilon = epsilon;
  r.frequency = static_cast<long double>(hits) / static_cast<long double>(trials);
  r.sigma = std::sqrt(epsilon * (1 - epsilon) / static_cast<long double>(trials));
  r.holds = r.frequency <= epsilon + 3 * r.sigma;
  return r;
}

DerivativeCheck imsse_inequality_check(const Graph& h, int n, long double p1, long double p2,
                                       std::uint64_t trials, std::uint64_t seed, int jobs,
                                       const SimLimits& limits) {
  if (!(p1 > 0 && p1 < p2 && p2 <= 1)) throw std::invalid_argument("need 0 < p1 < p2 <= 1");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const long double k = static_cast<long double>(h.edge_count());
  DerivativeCheck c;
  c.p1 = p1;
  c.p2 = p2;
  const auto low = run_trials(h, n, p1, trials, derive_seed(seed, 0), jobs, TrialOptions{false, limits});
  const auto high = run_trials(h, n, p2, trials, derive_seed(seed, 1), jobs, TrialOptions{false, limits});
  c.d1 = stats_of(low, [](const TrialRecord& r) { return r.d_sample; });
  c.d2 = stats_of(high, [](const TrialRecord& r) { return r.d_sample; });
  const SampleStats m1 = stats_of(low, [](const TrialRecord& r) { return r.conditional_mmse; });
  const SampleStats m2 = stats_of(high, [](const TrialRecord& r) { return r.conditional_mmse; });
  c.mmse_low = MmseEstimate{p1, trials, m1.mean, m1.stderr_, MmseEstimator::kConditionalVariance};
  c.mmse_high = MmseEstimate{p2, trials, m2.mean, m2.stderr_, MmseEstimator::kConditionalVariance};
  const long double dx = std::log(p2) - std::log(p1);
  c.slope = (c.d1.mean - c.d2.mean) / dx;
  c.slope_stderr = std::hypot(c.d1.stderr_, c.d2.stderr_) / dx;
  c.bound = k - m1.mean;
  c.holds = c.slope <= c.bound + 3 * std::hypot(c.slope_stderr, m1.stderr_);
  c.within_k = c.slope <= k + 3 * c.slope_stderr;
  return c;
}

ExactExpectations exhaustive_expectations(const Graph& h, int n, long double p) {
  const int pairs = n * (n - 1) / 2;
  if (pairs > 15) throw BudgetExceeded("exhaustive expectations limited to C(n, 2) <= 15");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  std::vector<std::uint32_t> masks;
  for (const auto& copy : enumerate_copies(h, families::clique(n))) {
    std::uint32_t m = 0;
    for (const auto& [a, b] : copy) m |= std::uint32_t{1} << pair_index(n, a, b);
    masks.push_back(m);
  }
  const long double big_m = static_cast<long double>(masks.size());
  const long double log_m = std::log(big_m);
  const int k = h.edge_count();
  ExactExpectations out;
  std::vector<std::uint32_t> through(static_cast<std::size_t>(pairs));
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << pairs); ++y) {
    std::fill(through.begin(), through.end(), 0);
    std::uint32_t z = 0;
    for (std::uint32_t m : masks) {
      if ((y & m) != m) continue;
      ++z;
      for (std::uint32_t rest = m; rest != 0; rest &= rest - 1) ++through[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    if (z == 0) continue;
    const int size = std::popcount(y);
    const long double weight = static_cast<long double>(z) / big_m * std::pow(p, size - k) *
                               std::pow(1 - p, pairs - size);
    if (weight == 0) continue;
    ++out.observations;
    long double mmse = 0;
    for (std::uint32_t c : through) mmse += static_cast<long double>(c) * (z - c);
    mmse /= static_cast<long double>(z) * z;
    const long double log_z = std::log(static_cast<long double>(z));
    out.mmse += weight * mmse;
    out.i += weight * (log_m - log_z);
    if (p > 0) out.d += weight * (log_z - log_m - k * std::log(p));
  }
  if (p == 0) out.d = std::numeric_limits<long double>::infinity();
  return out;
}

}  // namespace planted

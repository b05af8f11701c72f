#ifndef PLANTED_SIM_HPP
#define PLANTED_SIM_HPP

#include "planted/graph.hpp"
#include "planted/numeric.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace planted {

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of stream `index` under `master`; independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

using Rng = std::mt19937_64;

struct SimLimits {
  int max_n = 12;
  std::uint64_t max_copies = 10000000;
};

/// Index of pair {a, b} (a != b) among the C(n, 2) pairs, row-major.
int pair_index(int n, Vertex a, Vertex b);

struct PlantedInstance {
  int n = 0;
  Graph pattern;
  std::vector<Edge> hidden;  // sorted
  std::vector<Edge> noise;   // sorted, disjoint from hidden
  Graph observation;         // hidden ∪ noise
  long double p = 0;
  std::uint64_t seed = 0;
};

/// Hidden copy from a uniform injective vertex map, every other pair
/// included independently with probability p.
PlantedInstance sample_instance(const Graph& h, int n, long double p, std::uint64_t seed);

/// Posterior of the planted model given Y: uniform over the copies of H in Y.
struct PosteriorSummary {
  int n = 0;
  int edges = 0;                      // K
  std::uint64_t copies = 0;           // Z(Y)
  std::vector<std::uint64_t> containing;  // per pair of K_n: copies through it

  BigInt z() const { return BigInt(copies); }
  Rational marginal(int pair) const;
  std::vector<Rational> marginals() const;
  /// sum_i m_i (1 - m_i), exact.
  Rational conditional_mmse() const;
  long double conditional_mmse_value() const;
  /// K - sum_{i in S} m_i for a set S of pairs.
  long double signal_dot_mmse(const std::vector<Edge>& signal) const;
};

/// Throws NoCopiesError when Y holds no copy of H and BudgetExceeded past
/// the limits.
PosteriorSummary posterior_exact(const Graph& h, const Graph& y, const SimLimits& limits = {});

/// Draws `count` copies independently and uniformly from those in Y, each as a
/// sorted edge list.
std::vector<std::vector<Edge>> sample_posterior(const Graph& h, const Graph& y, int count, Rng& rng,
                                                const SimLimits& limits = {});

/// Everything measured on one planted instance.
struct TrialRecord {
  long double conditional_mmse = 0;
  long double signal_dot_mmse = 0;
  long double log_z = 0;
  long double d_sample = 0;  // log(Z / (M p^K))
  long double i_sample = 0;  // log(M / Z)
  std::uint64_t z = 0;
  int signal_overlap = -1;     // |S* ∩ S'| (Nishimori trials only)
  int posterior_overlap = -1;  // |S' ∩ S''|
};

struct TrialOptions {
  bool nishimori = false;
  SimLimits limits;
};

/// Trial `index` of the stream `seed`: the instance uses derive_seed(seed, index).
TrialRecord run_trial(const Graph& h, int n, long double p, std::uint64_t seed, std::uint64_t index,
                      const TrialOptions& options = {});

/// Trials 0..count-1 on `jobs` threads; the result is ordered by index and
/// does not depend on `jobs`.
std::vector<TrialRecord> run_trials(const Graph& h, int n, long double p, std::uint64_t count, std::uint64_t seed,
                                    int jobs = 1, const TrialOptions& options = {});

struct SampleStats {
  long double mean = 0;
  long double stderr_ = 0;
  std::uint64_t count = 0;
};

/// Kahan-compensated mean, sample standard deviation / sqrt(count).
SampleStats summarize(const std::vector<long double>& values);

enum class MmseEstimator { kConditionalVariance, kSignalDot };
const char* to_string(MmseEstimator estimator);

struct MmseEstimate {
  long double p = 0;
  std::uint64_t trials = 0;
  long double mean = 0;
  long double stderr_ = 0;
  MmseEstimator estimator = MmseEstimator::kConditionalVariance;
};

MmseEstimate mmse_monte_carlo(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                              MmseEstimator estimator = MmseEstimator::kConditionalVariance, int jobs = 1,
                              const SimLimits& limits = {});

struct MmseCurvePoint {
  long double p = 0;
  MmseEstimate estimate;
  long double normalized = 0;         // mean / K
  long double normalized_stderr = 0;
  SampleStats d;
  SampleStats i;
};

/// One estimate per grid point, point k using the stream derive_seed(seed, k).
std::vector<MmseCurvePoint> mmse_curve(const Graph& h, int n, const std::vector<long double>& p_grid,
                                       std::uint64_t trials, std::uint64_t seed, int jobs = 1,
                                       const SimLimits& limits = {});

/// D(p) = E log(Z / (M p^K)); +infinity at p = 0.
SampleStats kl_divergence_mc(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                             int jobs = 1, const SimLimits& limits = {});

/// I(p) = E log(M / Z).
SampleStats mutual_information_mc(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                                  int jobs = 1, const SimLimits& limits = {});

struct NishimoriResult {
  long double signal_posterior = 0;     // mean |S* ∩ S'|
  long double posterior_posterior = 0;  // mean |S' ∩ S''|
  long double z_score = 0;              // paired difference / its stderr; 0 if no spread
  std::uint64_t trials = 0;
};

NishimoriResult nishimori_check(const Graph& h, int n, long double p, std::uint64_t trials, std::uint64_t seed,
                                int jobs = 1, const SimLimits& limits = {});

struct PlantingResult {
  long double frequency = 0;  // of Z <= eps M p^K
  long double epsilon = 0;
  long double sigma = 0;      // sqrt(eps (1 - eps) / trials)
  bool holds = false;         // frequency <= eps + 3 sigma
  std::uint64_t trials = 0;
};

PlantingResult planting_ratio_check(const Graph& h, int n, long double p, std::uint64_t trials,
                                    std::uint64_t seed, long double epsilon, int jobs = 1,
                                    const SimLimits& limits = {});

struct DerivativeCheck {
  long double p1 = 0;
  long double p2 = 0;
  SampleStats d1;
  SampleStats d2;
  long double slope = 0;  // (D(p1) - D(p2)) / (log(1/p1) - log(1/p2))
  long double slope_stderr = 0;
  MmseEstimate mmse_low;   // at p1
  MmseEstimate mmse_high;  // at p2
  long double bound = 0;   // K - MMSE(p1)
  bool holds = false;      // slope <= bound within 3 combined stderr
  bool within_k = false;   // slope <= K within 3 stderr
};

/// d/dx D(e^{-x}) <= K - MMSE, checked by a finite difference over [p1, p2].
DerivativeCheck imsse_inequality_check(const Graph& h, int n, long double p1, long double p2,
                                       std::uint64_t trials, std::uint64_t seed, int jobs = 1,
                                       const SimLimits& limits = {});

struct ExactExpectations {
  long double mmse = 0;
  long double d = 0;
  long double i = 0;
  std::uint64_t observations = 0;  // Y with positive probability
};

/// E MMSE, D and I by summing over every observation Y on n vertices; only
/// for C(n, 2) <= 15.
ExactExpectations exhaustive_expectations(const Graph& h, int n, long double p);

}  // namespace planted

#endif  // PLANTED_SIM_HPP

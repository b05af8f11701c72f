#ifndef PLANTED_ACCEPTANCE_HPP
#define PLANTED_ACCEPTANCE_HPP

#include "planted/graph.hpp"
#include "planted/numeric.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace planted {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // seconds; 0 when none is pinned
};

struct AcceptanceOptions {
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string golden_dir;  // criterion 4 compares against files here
};

/// Names of the small pattern corpus: K3, K4, C4, C5, path3, matching(4),
/// matching(6), sun(4).
std::vector<std::pair<std::string, Graph>> pattern_corpus();

/// Golden threshold reports: (file name, pattern, n, q grid).
struct GoldenCase {
  std::string file;
  Graph pattern;
  BigInt n;
  std::vector<Rational> q_grid;
};
std::vector<GoldenCase> golden_cases();
/// The report text written to a golden file.
std::string golden_text(const GoldenCase& c);

/// Criteria 1..13. The suite names pick subsets: "oracle" (1, 2, 3, 7, 12),
/// "identities" (6, 11), "paper-examples" (4, 5), "statistics" (8, 9, 10),
/// "determinism" (13), "all".
std::vector<int> suite_criteria(const std::string& suite);
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// "PASS [ 3] name (0.12 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace planted

#endif  // PLANTED_ACCEPTANCE_HPP

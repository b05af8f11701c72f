#ifndef PLANTED_REPORT_HPP
#define PLANTED_REPORT_HPP

#include "planted/classify.hpp"
#include "planted/graph.hpp"
#include "planted/overlap.hpp"
#include "planted/sim.hpp"
#include "planted/thresholds.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace planted {

using Json = nlohmann::ordered_json;

/// Finite values as numbers, non-finite ones as "inf", "-inf", "nan".
Json real_json(long double x);
/// Shortest round-trip decimal, or inf/-inf/nan.
std::string real_text(long double x);

Json graph_json(const Graph& g);

Json thresholds_json(const Graph& h, const ThresholdCurve& curve);
std::string thresholds_csv(const ThresholdCurve& curve);

Json classify_json(const Graph& h, const ClassificationReport& report);
/// Fixed-width table of the condition entries followed by the verdict.
std::string classify_table(const ClassificationReport& report);

/// Columns: l, probability, probability_float, growth_functional,
/// weak_growth_functional; one row per feasible l.
std::string overlap_csv(const OverlapDistribution& dist);
Json overlap_json(const OverlapDistribution& dist);
Json moments_json(const MomentReport& report);

/// Columns: p, mmse_mean, mmse_norm, stderr, D, I, trials.
std::string curve_csv(const std::vector<MmseCurvePoint>& curve);

struct Overlay {
  std::string label;
  long double p = 0;
};

/// Line plot of normalized MMSE against p with vertical overlay markers.
std::string curve_svg(const std::vector<MmseCurvePoint>& curve, const std::vector<Overlay>& overlays,
                      const std::string& title);

/// SHA-1 of "blob <size>\0" + content, as git computes object ids.
std::string git_blob_sha1(std::string_view content);

}  // namespace planted

#endif  // PLANTED_REPORT_HPP

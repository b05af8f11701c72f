#include "planted/acceptance.hpp"
#include "planted/classify.hpp"
#include "planted/errors.hpp"
#include "planted/graph.hpp"
#include "planted/overlap.hpp"
#include "planted/report.hpp"
#include "planted/sim.hpp"
#include "planted/thresholds.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace planted;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kUsage = 1, kBudget = 2, kVerifyFailed = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::uint64_t seed = 0;
  int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  std::string out;
  std::string format;

  std::vector<std::string> pattern_items;  // config files split values at commas
  std::string pattern;
  std::string n = "100";
  std::vector<std::string> q_grid{"0", "1/10", "1/5", "3/10", "2/5", "1/2", "3/5", "7/10", "4/5", "9/10", "1"};
  std::vector<std::string> p_grid;
  std::uint64_t trials = 2000;

  // classify overrides
  double ratio_tol = 0.1;
  double deloc_c = 10;
  double dense_threshold = 3;
  std::string stable_delta = "1/10";
  std::string spread_delta = "1/2";

  // command specific
  std::string family;
  std::optional<int> k;
  std::optional<int> family_n;
  std::vector<int> sizes;
  bool alpha_only = false;
  std::vector<std::string> p_list{"1/2"};
  std::string delta = "1/2";
  std::string suite = "all";
  std::string golden = PLANTED_GOLDEN_DIR;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::vector<Rational> rational_list(const std::vector<std::string>& items, const char* what) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

std::vector<long double> real_list(const std::vector<std::string>& items, const char* what) {
  std::vector<long double> out;
  for (const Rational& r : rational_list(items, what)) out.push_back(to_long_double(r));
  return out;
}

// "family:arg" or a path to an edge-list file. The argument is k, the number
// of vertices for matching, and comma-separated sizes for disjoint_cliques.
Graph resolve_pattern(const std::string& source) {
  if (source.empty()) throw UsageError("--pattern is required");
  if (std::filesystem::exists(source)) return read_graph_file(source);
  const auto colon = source.find(':');
  const std::string family = source.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : source.substr(colon + 1);
  FamilyParams params;
  if (family == "disjoint_cliques") {
    for (const auto& s : split(arg, ',')) params.sizes.push_back(std::stoi(s));
  } else if (!arg.empty()) {
    const int value = std::stoi(arg);
    if (family == "matching" || family == "perfect_matching") {
      params.n = value;
    } else {
      params.k = value;
    }
  }
  return generate(family, params);
}

struct Output {
  std::string name;
  std::string content;
};

// Writes every output under --out and a manifest, or prints the one matching
// the requested format.
void emit(const Settings& s, const std::string& command, const std::vector<Output>& outputs,
          const std::string& stdout_name, double seconds, const nlohmann::ordered_json& config) {
  if (s.out.empty()) {
    for (const Output& o : outputs) {
      if (o.name == stdout_name) std::cout << o.content;
    }
    return;
  }
  std::filesystem::create_directories(s.out);
  Json files = Json::array();
  for (const Output& o : outputs) {
    std::ofstream(std::filesystem::path(s.out) / o.name, std::ios::binary) << o.content;
    Json f;
    f["name"] = o.name;
    f["bytes"] = o.content.size();
    f["sha1"] = git_blob_sha1(o.content);
    files.push_back(f);
  }
  Json manifest;
  manifest["tool"] = "planted";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["wall_seconds"] = seconds;
  manifest["files"] = files;
  std::ofstream(std::filesystem::path(s.out) / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  for (const Output& o : outputs) std::cout << (std::filesystem::path(s.out) / o.name).string() << "\n";
}

Json base_config(const Settings& s, const Graph& h) {
  Json c;
  c["pattern"] = s.pattern;
  c["pattern_vertices"] = h.vertex_count();
  c["pattern_edges"] = h.edge_count();
  c["n"] = s.n;
  c["seed"] = s.seed;
  return c;
}

std::string pick(const Settings& s, const std::string& fallback) { return s.format.empty() ? fallback : s.format; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_generate(const Settings& s) {
  FamilyParams params;
  params.k = s.k;
  params.n = s.family_n;
  params.sizes = s.sizes;
  const Graph g = generate(s.family, params);
  const std::string text = to_edge_list(g);
  if (s.out.empty()) {
    std::cout << text;
  } else {
    std::filesystem::create_directories(s.out);
    const auto path = std::filesystem::path(s.out) / (s.family + ".txt");
    std::ofstream(path, std::ios::binary) << text;
    std::cout << path.string() << "\n";
  }
  return kOk;
}

int cmd_thresholds(const Settings& s) {
  const auto start = std::chrono::steady_clock::now();
  const Graph h = resolve_pattern(s.pattern);
  const BigInt n = parse_big_integer(s.n);
  const auto grid = rational_list(s.q_grid, "--q-grid");
  const ThresholdCurve curve = threshold_curve(h, n, grid, {}, s.alpha_only);
  if (!s.alpha_only && !curve.psi_error.empty()) {
    throw BudgetExceeded(curve.psi_error + " (use --alpha-only for the surrogate curve)");
  }
  Json config = base_config(s, h);
  config["q_grid"] = join(s.q_grid);
  config["alpha_only"] = s.alpha_only;
  const std::vector<Output> outputs{{"thresholds.json", thresholds_json(h, curve).dump(2) + "\n"},
                                    {"thresholds.csv", thresholds_csv(curve)}};
  const std::string format = pick(s, "json");
  emit(s, "thresholds", outputs, format == "csv" ? "thresholds.csv" : "thresholds.json", seconds_since(start), config);
  return kOk;
}

int cmd_classify(const Settings& s) {
  const auto start = std::chrono::steady_clock::now();
  const Graph h = resolve_pattern(s.pattern);
  const BigInt n = parse_big_integer(s.n);
  ToleranceConfig cfg;
  cfg.ratio_tol = s.ratio_tol;
  cfg.deloc_C = s.deloc_c;
  cfg.dense_threshold = s.dense_threshold;
  cfg.stable_delta = parse_rational(s.stable_delta);
  cfg.spread_delta = parse_rational(s.spread_delta);
  const ClassificationReport report = aon_verdict(h, n, cfg);
  Json config = base_config(s, h);
  config["ratio_tol"] = s.ratio_tol;
  config["deloc_c"] = s.deloc_c;
  config["dense_threshold"] = s.dense_threshold;
  config["stable_delta"] = s.stable_delta;
  config["spread_delta"] = s.spread_delta;
  const std::vector<Output> outputs{{"classify.json", classify_json(h, report).dump(2) + "\n"},
                                    {"classify.txt", classify_table(report)}};
  const std::string format = pick(s, "table");
  emit(s, "classify", outputs, format == "json" ? "classify.json" : "classify.txt", seconds_since(start), config);
  return kOk;
}

int cmd_overlap(const Settings& s) {
  const auto start = std::chrono::steady_clock::now();
  const Graph h = resolve_pattern(s.pattern);
  const BigInt n = parse_big_integer(s.n);
  const OverlapDistribution dist = prior_overlap_distribution(h, n);
  const Rational delta = parse_rational(s.delta);
  Json moments = Json::array();
  for (long double p : real_list(s.p_list, "--p")) moments.push_back(moments_json(moment_report(dist, p, delta)));
  Json j;
  j["distribution"] = overlap_json(dist);
  j["moments"] = moments;
  Json config = base_config(s, h);
  config["p"] = join(s.p_list);
  config["delta"] = s.delta;
  const std::vector<Output> outputs{{"overlap.csv", overlap_csv(dist)}, {"moments.json", j.dump(2) + "\n"}};
  const std::string format = pick(s, "csv");
  emit(s, "overlap", outputs, format == "json" ? "moments.json" : "overlap.csv", seconds_since(start), config);
  return kOk;
}

std::vector<std::string> default_p_grid() {
  std::vector<std::string> out;
  for (int i = 0; i <= 20; ++i) out.push_back(format_rational(Rational(i, 20)));
  return out;
}

int cmd_simulate(const Settings& s) {
  const auto start = std::chrono::steady_clock::now();
  const Graph h = resolve_pattern(s.pattern);
  const BigInt big_n = parse_big_integer(s.n);
  if (big_n > SimLimits{}.max_n) throw BudgetExceeded("simulation limited to n <= " + std::to_string(SimLimits{}.max_n));
  const int n = big_n.convert_to<int>();
  const auto grid_items = s.p_grid.empty() ? default_p_grid() : s.p_grid;
  const auto grid = real_list(grid_items, "--p-grid");
  const auto curve = mmse_curve(h, n, grid, s.trials, s.seed, s.jobs);

  std::vector<Overlay> overlays{{"p1M", p1m(h, big_n)}};
  std::string regime = "not evaluated";
  try {
    const ClassificationReport report = aon_verdict(h, big_n);
    regime = to_string(report.verdict.regime);
    if (report.verdict.predicted_threshold) overlays.push_back({"p_AoN", *report.verdict.predicted_threshold});
  } catch (const BudgetExceeded& e) {
    regime = std::string("not evaluated: ") + e.what();
  }
  std::ostringstream title;
  title << "planted " << s.pattern << ", n = " << n << ", " << s.trials << " trials per p";

  Json config = base_config(s, h);
  config["p_grid"] = join(grid_items);
  config["trials"] = s.trials;
  config["classified_regime"] = regime;
  const std::vector<Output> outputs{{"curve.csv", curve_csv(curve)}, {"curve.svg", curve_svg(curve, overlays, title.str())}};
  const std::string format = pick(s, "csv");
  emit(s, "simulate", outputs, format == "svg" ? "curve.svg" : "curve.csv", seconds_since(start), config);
  return kOk;
}

int cmd_verify(const Settings& s) {
  AcceptanceOptions options;
  options.jobs = s.jobs;
  options.seed = s.seed;
  options.golden_dir = s.golden;
  int failed = 0;
  for (int id : suite_criteria(s.suite)) {
    const CriterionResult r = run_criterion(id, options);
    std::cout << format_result(r) << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << failed << " criteria failed" << std::endl;
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold landscape, classification and planted-model simulation for subgraphs of G(n, p)"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with option defaults");
  app.allow_config_extras(false);
  Settings s;

  app.add_option("--seed", s.seed, "master seed")->capture_default_str();
  app.add_option("--jobs", s.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", s.out, "output directory (stdout when empty)");
  app.add_option("--format", s.format, "stdout format")->check(CLI::IsMember({"json", "csv", "svg", "table"}));
  app.add_option("--pattern", s.pattern_items, "family:arg (e.g. sun:5, matching:8, disjoint_cliques:8,4) or edge-list file")
      ->delimiter(',');
  app.add_option("--n", s.n, "ambient number of vertices")->capture_default_str();
  app.add_option("--q-grid,--q_grid", s.q_grid, "comma-separated q values")->delimiter(',')->capture_default_str();
  app.add_option("--p-grid,--p_grid", s.p_grid, "comma-separated p values (default k/20, k = 0..20)")->delimiter(',');
  app.add_option("--trials", s.trials, "trials per p")->capture_default_str();
  app.add_option("--ratio-tol,--ratio_tol", s.ratio_tol)->capture_default_str();
  app.add_option("--deloc-c,--deloc_c", s.deloc_c)->capture_default_str();
  app.add_option("--dense-threshold,--dense_threshold", s.dense_threshold)->capture_default_str();
  app.add_option("--stable-delta,--stable_delta", s.stable_delta)->capture_default_str();
  app.add_option("--spread-delta,--spread_delta", s.spread_delta)->capture_default_str();

  auto* gen = app.add_subcommand("generate", "write a pattern graph as an edge list")->fallthrough();
  gen->add_option("family", s.family, "clique | cycle | path | matching | sun | disjoint_cliques | cycle_out | edge")
      ->required();
  gen->add_option("--k", s.k);
  gen->add_option("--n", s.family_n, "vertices of a perfect matching");
  gen->add_option("--size", s.sizes, "clique sizes for disjoint_cliques (repeatable)");

  auto* thr = app.add_subcommand("thresholds", "psi_q, lambda_q, alpha_q and witnesses over a q grid")->fallthrough();
  thr->add_flag("--alpha-only", s.alpha_only, "skip the psi search");

  auto* cls = app.add_subcommand("classify", "structural conditions and the all-or-nothing verdict")->fallthrough();

  auto* ovl = app.add_subcommand("overlap", "prior overlap law and truncated moment sums")->fallthrough();
  ovl->add_option("--p", s.p_list, "comma-separated p values")->delimiter(',')->capture_default_str();
  ovl->add_option("--delta", s.delta)->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo MMSE curve")->fallthrough();

  auto* ver = app.add_subcommand("verify", "acceptance suites")->fallthrough();
  ver->add_option("suite", s.suite, "oracle | identities | paper-examples | statistics | determinism | all")
      ->capture_default_str();
  ver->add_option("--golden", s.golden, "golden-file directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  s.pattern = join(s.pattern_items);
  try {
    if (*gen) return cmd_generate(s);
    if (*thr) return cmd_thresholds(s);
    if (*cls) return cmd_classify(s);
    if (*ovl) return cmd_overlap(s);
    if (*sim) return cmd_simulate(s);
    if (*ver) return cmd_verify(s);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

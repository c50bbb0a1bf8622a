// Command-line front end: condition numbers, subdivision, root isolation,
// sampling and Monte Carlo experiments. Output is JSON on stdout.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubecond/cubecond.hpp"

namespace {

using nlohmann::json;
using namespace cubecond;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFlagged = 2;

// JSON has no infinity; unbounded quantities are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num_array(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(num(x));
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CUBECOND_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("CUBECOND_SEED", "expected a non-negative integer");
    }
  }
  return 1;
}

void print(const json& doc, bool pretty) { std::cout << doc.dump(pretty ? 2 : -1) << '\n'; }

int run_condition(const std::string& path, const std::vector<double>& point, bool global, double eps,
                  bool pretty) {
  const SparsePolynomial f = parse_polynomial(read_text_file(path));
  if (global == !point.empty()) {
    std::cerr << "condition: give exactly one of --point or --global\n";
    return kUsage;
  }
  if (global) {
    const GlobalConditionEnclosure enc = global_condition(f, eps);
    print({{"lower", num(enc.lower)},
           {"upper", num(enc.upper)},
           {"grid_eps", enc.grid_eps},
           {"certified", enc.certified()}},
          pretty);
    return kOk;
  }
  if (point.size() != f.dimension()) {
    std::cerr << "condition: --point needs " << f.dimension() << " coordinates\n";
    return kUsage;
  }
  print({{"point", point},
         {"kappa", num(local_condition(f, point))},
         {"inverse_kappa", inverse_local_condition(f, point)}},
        pretty);
  return kOk;
}

int run_pv(const std::string& path, int max_depth, const std::string& svg, bool pretty) {
  const SparsePolynomial f = parse_polynomial(read_text_file(path));
  const SubdivisionReport r = pv_subdivide(f, max_depth);
  json boxes = json::array();
  for (std::size_t i = 0; i < r.final_boxes.size(); ++i) {
    boxes.push_back({{"midpoint", r.final_boxes[i].midpoint},
                     {"width", r.final_boxes[i].width},
                     {"clause", r.clauses[i] == PredicateClause::Sign ? "sign" : "gradient"}});
  }
  print({{"terminated", r.terminated},
         {"final_box_count", r.final_boxes.size()},
         {"processed_count", r.processed_count},
         {"max_depth_reached", r.max_depth_reached},
         {"per_depth_counts", r.per_depth_counts},
         {"pending_count", r.pending_count},
         {"boxes", boxes}},
        pretty);
  if (!svg.empty()) emit_svg(r, svg);
  return r.terminated ? kOk : kFlagged;
}

int run_isolate(const std::string& path, int max_depth, std::optional<double> eps, bool oracle,
                bool pretty) {
  const SparsePolynomial f = parse_polynomial(read_text_file(path));
  const IsolationResult r = descartes_isolate(f, max_depth);
  const double kappa = refine_global_condition(f).upper;
  const double d = f.degree();
  const double eps_used =
      eps ? *eps : (std::isfinite(kappa) ? std::min(1e-3, 0.5 / (std::numbers::e * d * kappa)) : 1e-3);

  json intervals = json::array();
  for (const auto& [lo, hi] : r.intervals) intervals.push_back({lo, hi});
  json bounds = {{"kappa_upper", num(kappa)},
                 {"tree_size", num(tree_size_bound(f, kappa))},
                 {"separation", separation_lower_bound(f, kappa)},
                 {"eps", eps_used}};
  try {
    bounds["eps_separation"] = eps_separation_lower_bound(f, kappa, eps_used);
  } catch (const HypothesisViolated&) {
    bounds["eps_separation"] = nullptr;
  }
  json doc = {{"intervals", intervals},
              {"exact_roots", r.exact_roots},
              {"complete", r.complete},
              {"tree_stats",
               {{"node_count", r.tree.node_count}, {"depth", r.tree.depth}, {"per_depth", r.tree.per_depth}}},
              {"bounds", bounds}};
  if (oracle) {
    const SeparationEstimate est = separation_oracle(f, eps_used);
    doc["oracle"] = {{"delta", num(est.delta)},
                     {"delta_eps", num(est.delta_eps)},
                     {"eps", est.eps},
                     {"real_roots", num_array(est.real_roots)}};
  }
  print(doc, pretty);
  return r.complete ? kOk : kFlagged;
}

int run_sample(const std::string& path, std::optional<std::uint64_t> seed, bool pretty) {
  const RandomModel model = parse_model(read_text_file(path));
  std::cout << polynomial_to_json(sample(model, seed ? *seed : default_seed()), pretty ? 2 : -1) << '\n';
  return kOk;
}

int run_experiment_cmd(const std::string& path, const std::string& out_dir, std::optional<unsigned> workers,
                       bool pretty) {
  const std::string text = read_text_file(path);
  ExperimentConfig cfg = parse_experiment_config(text);
  if (!json::parse(text).contains("seed")) cfg.seed = default_seed();
  if (workers) cfg.workers = *workers;
  const ExperimentReport report = run_experiment(cfg);

  std::filesystem::create_directories(out_dir);
  const std::string csv = (std::filesystem::path(out_dir) / (std::string(experiment_name(cfg.kind)) + ".csv")).string();
  emit_csv(report, csv);

  json summary = json::array();
  for (const auto& row : report.rows) {
    if (row.trial != "all" && row.trial != "sidebar") continue;
    json r = {{"trial", row.trial}, {"stat_name", row.stat}, {"value", num(row.value)}};
    r["bound"] = row.bound ? num(*row.bound) : json(nullptr);
    r["pass"] = row.pass ? json(*row.pass) : json(nullptr);
    summary.push_back(r);
  }
  print({{"experiment", experiment_name(cfg.kind)},
         {"trials", report.trials},
         {"seed", cfg.seed},
         {"excluded", report.excluded},
         {"violations", report.violations},
         {"passed", report.passed},
         {"inconclusive", report.inconclusive},
         {"csv", csv},
         {"summary", summary}},
        pretty);
  std::cerr << "wall-clock: " << report.wall_seconds << " s\n";
  return report.ok() ? kOk : kFlagged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition numbers, subdivision and root isolation for polynomials on the unit cube"};
  app.require_subcommand(1, 1);
  app.fallthrough();  // lets --pretty follow the subcommand
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");

  std::string input;
  auto* condition = app.add_subcommand("condition", "Local condition number or global enclosure");
  std::vector<double> point;
  bool global = false;
  double eps = 1e-3;
  condition->add_option("poly", input, "Polynomial JSON file")->required();
  condition->add_option("--point", point, "Point in [-1,1]^n")->expected(1, -1)->allow_extra_args();
  condition->add_flag("--global", global, "Enclose the global condition number");
  condition->add_option("--eps", eps, "Grid covering radius for --global")->check(CLI::PositiveNumber);

  auto* pv = app.add_subcommand("pv", "Interval subdivision of the cube");
  int pv_depth = 20;
  std::string svg;
  pv->add_option("poly", input, "Polynomial JSON file")->required();
  pv->add_option("--max-depth", pv_depth, "Depth limit")->check(CLI::Range(1, 50));
  pv->add_option("--svg", svg, "Write a picture of the final boxes (n = 2)");

  auto* isolate = app.add_subcommand("isolate", "Descartes root isolation on [-1,1]");
  int iso_depth = 60;
  std::optional<double> iso_eps;
  bool oracle = false;
  isolate->add_option("poly", input, "Univariate polynomial JSON file")->required();
  isolate->add_option("--max-depth", iso_depth, "Depth limit")->check(CLI::Range(0, 60));
  isolate->add_option("--eps", iso_eps, "Neighbourhood radius for the eps-separation")->check(CLI::PositiveNumber);
  isolate->add_flag("--oracle", oracle, "Also compute separations from all complex roots");

  auto* sample_cmd = app.add_subcommand("sample", "Draw a polynomial from a random model");
  std::optional<std::uint64_t> seed;
  sample_cmd->add_option("model", input, "Model JSON file")->required();
  sample_cmd->add_option("--seed", seed, "Seed (default: $CUBECOND_SEED or 1)");

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  std::string out_dir = ".";
  std::optional<unsigned> workers;
  experiment->add_option("config", input, "Experiment JSON file")->required();
  experiment->add_option("--out", out_dir, "Directory for the CSV report");
  experiment->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*condition) return run_condition(input, point, global, eps, pretty);
    if (*pv) return run_pv(input, pv_depth, svg, pretty);
    if (*isolate) return run_isolate(input, iso_depth, iso_eps, oracle, pretty);
    if (*sample_cmd) return run_sample(input, seed, pretty);
    if (*experiment) return run_experiment_cmd(input, out_dir, workers, pretty);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

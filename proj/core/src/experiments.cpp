#include "cubecond/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cubecond/condition.hpp"
#include "cubecond/errors.hpp"
#include "cubecond/rng.hpp"
#include "cubecond/univariate.hpp"
#include "parallel.hpp"

namespace cubecond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return r;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int pv_depth(const ExperimentConfig& cfg) { return cfg.max_depth > 0 ? cfg.max_depth : 20; }
int descartes_depth(const ExperimentConfig& cfg) { return cfg.max_depth > 0 ? cfg.max_depth : 60; }

ReportRow trial_row(std::size_t i, const ExperimentConfig& cfg, std::string stat, double value) {
  return {std::to_string(i), derive_seed(cfg.seed, i), std::move(stat), value, std::nullopt,
          std::nullopt};
}

ReportRow summary_row(const ExperimentConfig& cfg, std::string stat, double value,
                      std::optional<double> bound = std::nullopt,
                      std::optional<bool> pass = std::nullopt) {
  return {"all", cfg.seed, std::move(stat), value, bound, pass};
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Tail:
      return "tail";
    case ExperimentKind::Pv:
      return "pv";
    case ExperimentKind::Descartes:
      return "descartes";
    case ExperimentKind::Separation:
      return "separation";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto k : {ExperimentKind::Tail, ExperimentKind::Pv, ExperimentKind::Descartes,
                 ExperimentKind::Separation}) {
    if (name == experiment_name(k)) return k;
  }
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

ExperimentConfig::ExperimentConfig(ExperimentKind k, RandomModel m)
    : kind(k), model(std::move(m)), t_grid{std::numbers::e, 10.0, 100.0}, k_list{1, 2} {}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (max_depth < 0) throw std::invalid_argument("experiment: max_depth must be >= 0");
  const std::size_t n = model.dimension();
  switch (kind) {
    case ExperimentKind::Tail:
      if (t_grid.empty()) throw std::invalid_argument("tail experiment: empty t_grid");
      for (double t : t_grid) {
        if (!(t >= std::numbers::e)) throw std::invalid_argument("tail experiment: t_grid below e");
      }
      if (!point.empty()) {
        if (point.size() != n) throw std::invalid_argument("tail experiment: point has wrong length");
        if (norm_inf(point) > 1.0) throw std::invalid_argument("tail experiment: point outside the cube");
      }
      break;
    case ExperimentKind::Pv:
      if (n > 2 || model.degree() > 16) {
        throw std::invalid_argument("pv experiment: needs n <= 2 and d <= 16");
      }
      break;
    case ExperimentKind::Descartes:
      if (n != 1) throw std::invalid_argument("descartes experiment: needs n = 1");
      if (k_list.empty()) throw std::invalid_argument("descartes experiment: empty k_list");
      for (int k : k_list) {
        if (k < 1 || k > 3) throw std::invalid_argument("descartes experiment: k_list entries must lie in {1,2,3}");
      }
      break;
    case ExperimentKind::Separation:
      if (n != 1 || model.degree() > 64) {
        throw std::invalid_argument("separation experiment: needs n = 1 and d <= 64");
      }
      if (!(eps > 0.0) || !(grid_eps > 0.0)) {
        throw std::invalid_argument("separation experiment: eps and grid_eps must be positive");
      }
      break;
  }
}

ExperimentReport run_tail_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::Tail) throw std::invalid_argument("run_tail_experiment: wrong kind");
  cfg.validate();
  Stopwatch clock;
  const Point x = cfg.point.empty() ? Point(cfg.model.dimension(), 0.0) : cfg.point;
  std::vector<double> kappa(cfg.trials);
  detail::parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const SparsePolynomial f = sample(cfg.model, cfg.seed, i);
    kappa[i] = f.is_zero() ? kInf : local_condition(f, x);
  });

  ExperimentReport report;
  report.kind = ExperimentKind::Tail;
  report.trials = cfg.trials;
  for (std::size_t i = 0; i < cfg.trials; ++i) report.rows.push_back(trial_row(i, cfg, "kappa", kappa[i]));
  const double n_trials = static_cast<double>(cfg.trials);
  report.passed = true;
  for (double t : cfg.t_grid) {
    std::size_t hits = 0;
    for (double k : kappa) hits += k >= t ? 1 : 0;
    const double p_hat = static_cast<double>(hits) / n_trials;
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / n_trials);
    const double bound = tail_bound_local(cfg.model, t);
    const bool pass = p_hat - 3.0 * se <= bound;
    if (!pass) ++report.violations;
    report.passed = report.passed && pass;
    const std::string at = "@" + fmt(t);
    report.rows.push_back(summary_row(cfg, "survival" + at, p_hat, bound, pass));
    report.rows.push_back(summary_row(cfg, "survival_se" + at, se));
  }
  report.wall_seconds = clock.seconds();
  return report;
}

ExperimentReport run_pv_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::Pv) throw std::invalid_argument("run_pv_experiment: wrong kind");
  cfg.validate();
  Stopwatch clock;
  struct Trial {
    bool terminated = false;
    double boxes = 0.0;
  };
  std::vector<Trial> out(cfg.trials);
  PvOptions options;
  options.max_depth = pv_depth(cfg);
  detail::parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const SparsePolynomial f = sample(cfg.model, cfg.seed, i);
    if (f.is_zero()) return;
    const SubdivisionReport r = pv_subdivide(f, options);
    out[i] = {r.terminated, static_cast<double>(r.final_boxes.size())};
  });

  ExperimentReport report;
  report.kind = ExperimentKind::Pv;
  report.trials = cfg.trials;
  std::vector<double> counts;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    if (out[i].terminated) {
      counts.push_back(out[i].boxes);
      report.rows.push_back(trial_row(i, cfg, "final_boxes", out[i].boxes));
    } else {
      ++report.excluded;
      report.rows.push_back(trial_row(i, cfg, "nonterminating", 1.0));
    }
  }
  const MeanSe ms = mean_se(counts);
  const double bound = expected_boxes_bound(cfg.model).best();
  report.passed = !counts.empty() && ms.mean + 3.0 * ms.se <= bound;
  report.violations = report.passed ? 0 : 1;
  report.inconclusive = static_cast<double>(report.excluded) > 0.1 * static_cast<double>(cfg.trials);
  report.rows.push_back(summary_row(cfg, "mean_final_boxes", ms.mean, bound, report.passed));
  report.rows.push_back(summary_row(cfg, "mean_final_boxes_se", ms.se));
  report.rows.push_back(summary_row(cfg, "nonterminating", static_cast<double>(report.excluded)));
  report.wall_seconds = clock.seconds();
  return report;
}

ExperimentReport run_descartes_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::Descartes) {
    throw std::invalid_argument("run_descartes_experiment: wrong kind");
  }
  cfg.validate();
  Stopwatch clock;
  struct Trial {
    bool complete = false;
    double nodes = 0.0;
  };
  std::vector<Trial> out(cfg.trials);
  const int depth = descartes_depth(cfg);
  detail::parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const SparsePolynomial f = sample(cfg.model, cfg.seed, i);
    if (f.is_zero()) return;
    const IsolationResult r = descartes_isolate(f, depth);
    out[i] = {r.complete, static_cast<double>(r.tree.node_count)};
  });

  ExperimentReport report;
  report.kind = ExperimentKind::Descartes;
  report.trials = cfg.trials;
  std::vector<double> sizes;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    if (out[i].complete) {
      sizes.push_back(out[i].nodes);
      report.rows.push_back(trial_row(i, cfg, "tree_size", out[i].nodes));
    } else {
      ++report.excluded;
      report.rows.push_back(trial_row(i, cfg, "incomplete", 1.0));
    }
  }
  report.passed = !sizes.empty();
  for (int k : cfg.k_list) {
    std::vector<double> powers;
    powers.reserve(sizes.size());
    for (double s : sizes) powers.push_back(std::pow(s, k));
    const MeanSe ms = mean_se(powers);
    const double bound = descartes_moment_bound(cfg.model, k);
    const bool pass = !sizes.empty() && ms.mean + 3.0 * ms.se <= bound;
    if (!pass) ++report.violations;
    report.passed = report.passed && pass;
    const std::string stat = "moment_k=" + std::to_string(k);
    report.rows.push_back(summary_row(cfg, stat, ms.mean, bound, pass));
    report.rows.push_back(summary_row(cfg, stat + "_se", ms.se));
  }
  report.rows.push_back(summary_row(cfg, "incomplete", static_cast<double>(report.excluded)));
  report.inconclusive = static_cast<double>(report.excluded) > 0.1 * static_cast<double>(cfg.trials);

  // X^16 - 2 (3X - 1)^2: two roots about 7e-5 apart near 1/3.
  const double mignotte[17] = {-2.0, 12.0, -18.0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1.0};
  const IsolationResult side = descartes_isolate(SparsePolynomial::univariate(mignotte), depth);
  report.rows.push_back({"sidebar", 0, "mignotte_d16_tree_size",
                         static_cast<double>(side.tree.node_count), std::nullopt, std::nullopt});
  report.rows.push_back({"sidebar", 0, "mignotte_d16_depth", static_cast<double>(side.tree.depth),
                         std::nullopt, std::nullopt});
  report.wall_seconds = clock.seconds();
  return report;
}

ExperimentReport run_separation_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::Separation) {
    throw std::invalid_argument("run_separation_experiment: wrong kind");
  }
  cfg.validate();
  Stopwatch clock;
  struct Trial {
    bool oracle_failed = false;
    double kappa_upper = kInf;
    double delta = kInf;
    double delta_bound = 0.0;
    double delta_eps = kInf;
    double delta_eps_bound = 0.0;
  };
  std::vector<Trial> out(cfg.trials);
  const double d = cfg.model.degree();
  detail::parallel_for(cfg.trials, cfg.workers, [&](std::size_t i) {
    const SparsePolynomial f = sample(cfg.model, cfg.seed, i);
    Trial& t = out[i];
    if (f.is_zero()) return;
    t.kappa_upper = refine_global_condition(f, 2.0, cfg.grid_eps).upper;
    // With kappa_upper infinite both bounds are 0 and hold trivially.
    double eps = cfg.eps;
    if (std::isfinite(t.kappa_upper)) eps = std::min(eps, 0.5 / (std::numbers::e * d * t.kappa_upper));
    try {
      const SeparationEstimate est = separation_oracle(f, eps);
      t.delta = est.delta;
      t.delta_eps = est.delta_eps;
    } catch (const OracleFailure&) {
      t.oracle_failed = true;
      return;
    }
    t.delta_bound = separation_lower_bound(f, t.kappa_upper);
    if (std::isfinite(t.kappa_upper)) {
      t.delta_eps_bound = eps_separation_lower_bound(f, t.kappa_upper, eps);
    }
  });

  ExperimentReport report;
  report.kind = ExperimentKind::Separation;
  report.trials = cfg.trials;
  std::size_t v_delta = 0;
  std::size_t v_delta_eps = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const Trial& t = out[i];
    if (t.oracle_failed) {
      ++report.excluded;
      report.rows.push_back(trial_row(i, cfg, "oracle_failed", 1.0));
      continue;
    }
    const bool ok_delta = t.delta >= t.delta_bound;
    const bool ok_eps = t.delta_eps >= t.delta_eps_bound;
    v_delta += ok_delta ? 0 : 1;
    v_delta_eps += ok_eps ? 0 : 1;
    report.rows.push_back(trial_row(i, cfg, "kappa_upper", t.kappa_upper));
    auto r1 = trial_row(i, cfg, "delta", t.delta);
    r1.bound = t.delta_bound;
    r1.pass = ok_delta;
    report.rows.push_back(r1);
    auto r2 = trial_row(i, cfg, "delta_eps", t.delta_eps);
    r2.bound = t.delta_eps_bound;
    r2.pass = ok_eps;
    report.rows.push_back(r2);
  }
  report.violations = v_delta + v_delta_eps;
  report.passed = report.violations == 0 && report.excluded < cfg.trials;
  report.inconclusive = static_cast<double>(report.excluded) > 0.01 * static_cast<double>(cfg.trials);
  report.rows.push_back(summary_row(cfg, "violations_delta", static_cast<double>(v_delta), 0.0, v_delta == 0));
  report.rows.push_back(
      summary_row(cfg, "violations_delta_eps", static_cast<double>(v_delta_eps), 0.0, v_delta_eps == 0));
  report.rows.push_back(summary_row(cfg, "oracle_failures", static_cast<double>(report.excluded)));
  report.wall_seconds = clock.seconds();
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Tail:
      return run_tail_experiment(cfg);
    case ExperimentKind::Pv:
      return run_pv_experiment(cfg);
    case ExperimentKind::Descartes:
      return run_descartes_experiment(cfg);
    case ExperimentKind::Separation:
      return run_separation_experiment(cfg);
  }
  throw std::invalid_argument("run_experiment: unknown kind");
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,seed,stat_name,value,bound,pass\n";
  for (const auto& r : report.rows) {
    out << r.trial << ',' << r.seed << ',' << r.stat << ',' << fmt(r.value) << ',';
    if (r.bound) out << fmt(*r.bound);
    out << ',';
    if (r.pass) out << (*r.pass ? "true" : "false");
    out << '\n';
  }
  return out.str();
}

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bytes;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

void emit_csv(const ExperimentReport& report, const std::string& path) {
  write_file(path, report_csv(report));
}

void emit_svg(const SubdivisionReport& subdivision, const std::string& path) {
  write_file(path, subdivision_svg(subdivision));
}

}  // namespace cubecond

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   cubecond_acceptance            run all criteria
//   cubecond_acceptance --only N   run criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cubecond/cubecond.hpp"
#include "test_support.hpp"

using namespace cubecond;
using testing_support::Gen;

namespace {

constexpr double kSlack = 1e-9;

struct Outcome {
  bool pass = true;
  std::string first_failure;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> run;
};

// Univariate models on random supports with d <= 64 and |M| <= 8, shared by
// the separation and Descartes criteria so both see the same draws.
std::vector<RandomModel> univariate_suite(const Distribution& dist) {
  Gen gen(2024);
  std::vector<RandomModel> models;
  for (int i = 0; i < 10; ++i) {
    const int d = gen.integer(2, 64);
    const auto size = static_cast<std::size_t>(gen.integer(3, 8));
    auto support = gen.support(1, d, size);
    // Pin the degree.
    if (std::none_of(support.begin(), support.end(), [&](const Exponent& a) { return static_cast<int>(a[0]) == d; })) {
      support.back() = {static_cast<std::uint32_t>(d)};
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());
    }
    models.emplace_back(1, std::move(support), dist);
  }
  return models;
}

constexpr std::size_t kDrawsPerModel = 100;
constexpr std::uint64_t kSuiteSeed = 31;

void norm_lipschitz(Outcome& out) {
  Gen gen(101);
  std::size_t violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 3));
    const int d = gen.integer(1, 16);
    const auto f = gen.polynomial(n, d, static_cast<std::size_t>(gen.integer(static_cast<int>(n) + 1, 16)));
    const Point x = gen.point(n);
    const Point y = gen.point(n);
    const double norm = f.norm1();
    const double dist = distance_inf(x, y);
    const double dd = f.degree();
    double grad_diff = 0.0;
    const Covector gx = f.gradient(x);
    const Covector gy = f.gradient(y);
    for (std::size_t i = 0; i < n; ++i) grad_diff += std::abs(gx[i] - gy[i]);
    const bool ok = std::abs(f.evaluate(x)) <= norm * (1 + kSlack) &&
                    std::abs(f.evaluate(x) - f.evaluate(y)) <= dd * norm * dist * (1 + kSlack) + kSlack * norm &&
                    grad_diff <= dd * dd * norm * dist * (1 + kSlack) + kSlack * norm;
    violations += ok ? 0 : 1;
  }
  out.detail << "violations=" << violations << "/10000";
  out.require(violations == 0, "norm or Lipschitz inequality");
}

void condition_suite(Outcome& out) {
  Gen gen(102);
  std::size_t below_one = 0;
  std::size_t lip_coeff = 0;
  std::size_t lip_point = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 3));
    const auto f = gen.polynomial(n, gen.integer(1, 16), static_cast<std::size_t>(gen.integer(static_cast<int>(n) + 1, 16)));
    const Point x = gen.point(n);
    const Point y = gen.point(n);
    const double k = local_condition(f, x);
    below_one += k >= 1.0 ? 0 : 1;

    std::vector<Term> moved(f.terms().begin(), f.terms().end());
    const double scale = std::pow(10.0, gen.uniform(-4.0, 0.0));
    for (auto& t : moved) t.coeff += scale * gen.normal();
    const SparsePolynomial g(n, moved);
    if (g.degree() == f.degree()) {
      const double lhs = std::abs(f.norm1() / k - g.norm1() / local_condition(g, x));
      lip_coeff += lhs <= subtract(f, g).norm1() * (1 + kSlack) + 1e-15 ? 0 : 1;
    }
    const double lhs = std::abs(inverse_local_condition(f, x) - inverse_local_condition(f, y));
    lip_point += lhs <= f.degree() * distance_inf(x, y) * (1 + kSlack) + 1e-15 ? 0 : 1;
  }

  std::size_t sandwich = 0;
  std::size_t sandwich_2d = 0;  // upper side with 1 + 2d in place of 1 + d
  std::size_t lp_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 2));
    const auto f = gen.polynomial(n, gen.integer(1, 8), static_cast<std::size_t>(gen.integer(static_cast<int>(n) + 2, 8)));
    const Point x = gen.point(n);
    const auto R = testing_support::constraint_rows(f, x);
    std::vector<double> b(R.size(), 0.0);
    for (std::size_t r = 0; r < R.size(); ++r) {
      for (std::size_t j = 0; j < f.support_size(); ++j) b[r] += R[r][j] * f.terms()[j].coeff;
    }
    const double lp = testing_support::dual_optimum(R, b);
    const double dist = dist1_to_sigma_x(f, x);
    lp_mismatch += std::abs(lp - dist) <= 1e-8 * std::max(1.0, lp) ? 0 : 1;
    const double k = local_condition(f, x);
    const bool ok = f.norm1() / lp <= k * (1 + kSlack) && k <= (1.0 + f.degree()) * f.norm1() / lp * (1 + kSlack);
    sandwich += ok ? 0 : 1;
    sandwich_2d += k <= (1.0 + 2.0 * f.degree()) * f.norm1() / lp * (1 + kSlack) ? 0 : 1;
  }

  std::size_t gamma_checked = 0;
  std::size_t gamma_violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto f = gen.polynomial(1, gen.integer(2, 16), static_cast<std::size_t>(gen.integer(3, 8)));
    const double x[1] = {gen.uniform(-1.0, 1.0)};
    // The hypothesis kappa |f(x)| / |f|_1 < 1, without the rounding of the quotient.
    if (!(f.gradient(x).norm1() / f.degree() > std::abs(f.evaluate(x)))) continue;
    ++gamma_checked;
    gamma_violations += gamma_exact_univariate(f, x[0]) <= gamma_bound(f, x) * (1 + kSlack) ? 0 : 1;
  }

  out.detail << "kappa<1=" << below_one << " lip_coeff=" << lip_coeff << " lip_point=" << lip_point
             << " sandwich=" << sandwich << " sandwich(1+2d)=" << sandwich_2d << " lp_mismatch=" << lp_mismatch << " gamma=" << gamma_violations << "/"
             << gamma_checked;
  out.require(below_one == 0, "kappa >= 1");
  out.require(lip_coeff == 0, "coefficient Lipschitz");
  out.require(lip_point == 0, "point Lipschitz");
  out.require(sandwich == 0 && lp_mismatch == 0, "sandwich against the LP oracle");
  out.require(gamma_checked > 1000 && gamma_violations == 0, "gamma estimate");
}

void interval_soundness(Outcome& out) {
  Gen gen(103);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 3));
    const auto f = gen.polynomial(n, gen.integer(1, 12), static_cast<std::size_t>(gen.integer(static_cast<int>(n) + 1, 12)));
    Box box = Box::unit_cube(n);
    const int depth = gen.integer(0, 10);
    for (int k = 0; k < depth; ++k) {
      const auto children = standard_subdivision(box);
      box = children[static_cast<std::size_t>(gen.integer(0, static_cast<int>(children.size()) - 1))];
    }
    const Interval vf = interval_f(f, box);
    const Interval vg = interval_grad_norm(f, box);
    for (int s = 0; s < 1000; ++s) {
      Point x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = box.midpoint[i] + 0.5 * box.width * gen.uniform(-1.0, 1.0);
      const double tol = kSlack * f.norm1() * f.degree() * f.degree();
      const double v = f.evaluate(x);
      const double g = f.gradient(x).norm1();
      const bool ok = vf.lo - tol <= v && v <= vf.hi + tol && vg.lo - tol <= g && g <= vg.hi + tol;
      violations += ok ? 0 : 1;
    }
  }
  out.detail << "violations=" << violations << "/1000000";
  out.require(violations == 0, "enclosure");
}

void pv_regressions(Outcome& out) {
  const auto x = pv_subdivide(testing_support::uni({0, 1}), 20);
  out.require(x.terminated && x.final_boxes.size() == 2, "f = X gives 2 boxes");
  const SparsePolynomial line(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto l = pv_subdivide(line, 20);
  out.require(l.terminated && l.final_boxes.size() == 16, "f = X1 + X2 gives 16 boxes");
  const auto s = pv_subdivide(testing_support::uni({0.25, -1, 1}), 12);
  out.require(!s.terminated, "(X - 1/2)^2 flagged at depth 12");

  Gen gen(104);
  std::size_t terminated = 0;
  std::size_t failed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 2));
    const auto f = gen.polynomial(n, gen.integer(1, 6), static_cast<std::size_t>(gen.integer(static_cast<int>(n) + 1, 6)));
    const auto r = pv_subdivide(f, 16);
    if (!r.terminated) continue;
    ++terminated;
    failed += verify_output_boxes(f, r, 16, static_cast<std::uint64_t>(trial)) ? 0 : 1;
  }
  out.detail << "X:" << x.final_boxes.size() << " X1+X2:" << l.final_boxes.size()
             << " double_root_terminated=" << (s.terminated ? "yes" : "no") << " verified=" << terminated - failed
             << "/" << terminated;
  out.require(terminated >= 90 && failed == 0, "verify_output_boxes on random draws");
}

void amortization(Outcome& out) {
  Gen gen(105);
  std::size_t terminated = 0;
  std::size_t violations = 0;
  double worst = 0.0;
  for (int trial = 0; terminated < 100 && trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 2));
    const auto f = gen.polynomial(n, gen.integer(1, 8), static_cast<std::size_t>(gen.integer(static_cast<int>(n) + 1, 8)));
    const auto r = pv_subdivide(f, 16);
    if (!r.terminated) continue;
    ++terminated;
    const auto est = amortization_bound(f, 4000, static_cast<std::uint64_t>(trial));
    const double boxes = static_cast<double>(r.final_boxes.size());
    worst = std::max(worst, boxes / est.upper());
    violations += boxes <= est.upper() ? 0 : 1;
  }
  out.detail << "violations=" << violations << "/" << terminated << " max boxes/bound=" << worst;
  out.require(terminated == 100, "100 terminated draws");
  out.require(violations == 0, "box count within 4^n E[1/b_f] + 3 SE");
}

void separation_suite(Outcome& out) {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t excluded = 0;
  for (const auto& dist : {Distribution::gaussian(0.0, 1.0), Distribution::uniform(-1.0, 1.0)}) {
    for (const auto& model : univariate_suite(dist)) {
      ExperimentConfig cfg(ExperimentKind::Separation, model);
      cfg.trials = kDrawsPerModel;
      cfg.seed = kSuiteSeed;
      const auto r = run_separation_experiment(cfg);
      trials += r.trials;
      violations += r.violations;
      excluded += r.excluded;
      out.require(!r.inconclusive, "oracle failures above 1%");
    }
  }
  out.detail << "draws=" << trials << " violations=" << violations << " oracle_failures=" << excluded;
  out.require(trials == 2000 && violations == 0, "separation bounds");
}

void descartes_suite(Outcome& out) {
  std::size_t draws = 0;
  std::size_t mismatches = 0;
  std::size_t width = 0;
  std::size_t size_bound = 0;
  std::size_t moments = 0;
  std::size_t skipped = 0;
  for (const auto& dist : {Distribution::gaussian(0.0, 1.0), Distribution::uniform(-1.0, 1.0)}) {
    for (const auto& model : univariate_suite(dist)) {
      const std::size_t m = model.support_size();
      for (std::size_t i = 0; i < kDrawsPerModel; ++i) {
        const auto f = sample(model, kSuiteSeed, i);
        ++draws;
        const auto iso = descartes_isolate(f);
        SeparationEstimate est;
        try {
          est = separation_oracle(f, 1e-3);
        } catch (const OracleFailure&) {
          ++skipped;
          continue;
        }
        // One oracle root per interval, one per exact root, none left over.
        bool ok = iso.complete && iso.root_count() == est.real_roots.size();
        for (const auto& [lo, hi] : iso.intervals) {
          std::size_t inside = 0;
          for (double r : est.real_roots) inside += lo <= r && r <= hi ? 1 : 0;
          ok = ok && inside == 1;
        }
        for (double e : iso.exact_roots) {
          std::size_t near = 0;
          for (double r : est.real_roots) near += std::abs(r - e) <= 1e-9 ? 1 : 0;
          ok = ok && near == 1;
        }
        mismatches += ok ? 0 : 1;
        for (auto w : iso.tree.per_depth) width += w <= 4 * m ? 0 : 1;
        const double kappa = refine_global_condition(f).upper;
        if (std::isfinite(kappa)) {
          size_bound += static_cast<double>(iso.tree.node_count) <= tree_size_bound(f, kappa) ? 0 : 1;
        }
      }
      ExperimentConfig cfg(ExperimentKind::Descartes, model);
      cfg.trials = kDrawsPerModel;
      cfg.seed = kSuiteSeed;
      cfg.k_list = {1, 2};
      const auto r = run_descartes_experiment(cfg);
      moments += r.violations;
      out.require(!r.inconclusive, "incomplete isolations above 10%");
    }
  }
  out.detail << "draws=" << draws << " oracle_mismatch=" << mismatches << " width=" << width
             << " tree_size=" << size_bound << " moment_violations=" << moments << " oracle_failures=" << skipped;
  out.require(mismatches == 0, "isolation matches the oracle");
  out.require(width == 0, "tree width <= 4|M|");
  out.require(size_bound == 0, "tree size bound");
  out.require(moments == 0, "moment bounds");
  out.require(skipped <= draws / 100, "oracle failures");
}

std::vector<Exponent> powers(std::initializer_list<std::uint32_t> ks) {
  std::vector<Exponent> m;
  for (auto k : ks) m.push_back({k});
  return m;
}

void tail_experiment(Outcome& out) {
  for (const auto& dist : {Distribution::gaussian(0.0, 1.0), Distribution::uniform(-1.0, 1.0)}) {
    ExperimentConfig cfg(ExperimentKind::Tail, RandomModel(1, powers({0, 1, 5}), dist));
    cfg.trials = 10000;
    cfg.seed = 7;
    cfg.t_grid = {std::numbers::e, 10.0, 100.0};
    const auto r = run_tail_experiment(cfg);
    out.detail << (dist.kind == DistributionKind::Gaussian ? "gaussian: " : "uniform: ");
    for (const auto& row : r.rows) {
      if (row.trial == "all" && row.bound) out.detail << row.stat << "=" << row.value << "<=" << *row.bound << " ";
    }
    out.require(r.ok(), "survival within the tail bound");
  }
}

void box_count(Outcome& out) {
  ExperimentConfig cfg(ExperimentKind::Pv, RandomModel(1, powers({0, 1, 2}), Distribution::gaussian(0.0, 1.0)));
  cfg.trials = 1000;
  cfg.seed = 11;
  cfg.max_depth = 30;
  const auto r = run_pv_experiment(cfg);
  double mean = 0.0;
  double se = 0.0;
  double bound = 0.0;
  for (const auto& row : r.rows) {
    if (row.stat == "mean_final_boxes") {
      mean = row.value;
      bound = row.bound.value_or(0.0);
    }
    if (row.stat == "mean_final_boxes_se") se = row.value;
  }
  out.detail << "mean=" << mean << " se=" << se << " bound=" << bound << " nonterminating=" << r.excluded;
  out.require(bound == 86400.0, "bound value");
  out.require(r.ok() && mean + 3.0 * se <= 86400.0, "mean + 3 SE within the bound");
}

void model_constants_check(Outcome& out) {
  std::vector<RandomModel> suite;
  for (const auto& dist : {Distribution::gaussian(0.0, 1.0), Distribution::uniform(-1.0, 1.0)}) {
    for (auto& m : univariate_suite(dist)) suite.push_back(std::move(m));
    suite.emplace_back(1, powers({0, 1, 5}), dist);
    suite.emplace_back(1, powers({0, 1, 2}), dist);
    suite.emplace_back(2, std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}, {2, 1}}, dist);
  }
  suite.emplace_back(1, powers({0, 1, 5}), Distribution::weibull_symmetric(2.0, 1.0));
  suite.emplace_back(1, powers({0, 1, 9}), Distribution::uniform(-1.0, 1.0), 64.0);

  std::size_t lower = 0;
  std::size_t upper_gauss = 0;
  std::size_t upper_uniform = 0;
  double worst_gauss = 0.0;
  for (const auto& model : suite) {
    const auto c = model_constants(model);
    const double np1 = static_cast<double>(model.dimension() + 1);
    lower += c.K * c.rho > np1 / 4.0 && c.L * c.rho > 9.0 * np1 / 50.0 ? 0 : 1;
    const double half = static_cast<double>(model.support_size()) / 2.0;
    const double ratio = c.K * c.rho / half;
    if (model.distribution().kind == DistributionKind::Gaussian) {
      upper_gauss += ratio <= 1.0 + kSlack ? 0 : 1;
      worst_gauss = std::max(worst_gauss, ratio);
    }
    if (model.distribution().kind == DistributionKind::Uniform) upper_uniform += ratio <= 1.0 + kSlack ? 0 : 1;
  }
  out.detail << "models=" << suite.size() << " lower_violations=" << lower << " gaussian_upper_violations="
             << upper_gauss << " (K rho / (|M|/2) = " << worst_gauss << ") uniform_upper_violations=" << upper_uniform;
  out.require(lower == 0, "K rho and L rho lower bounds");
  out.require(upper_uniform == 0, "uniform K rho <= |M|/2");
  out.require(upper_gauss == 0, "gaussian K rho <= |M|/2");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "norm and Lipschitz inequalities", 10.0, norm_lipschitz},
      {2, "condition number properties", 0.0, condition_suite},
      {3, "interval enclosures", 0.0, interval_soundness},
      {4, "subdivision regressions", 30.0, pv_regressions},
      {5, "amortized box count", 0.0, amortization},
      {6, "root separation bounds", 300.0, separation_suite},
      {7, "Descartes isolation", 0.0, descartes_suite},
      {8, "tail bound experiment", 60.0, tail_experiment},
      {9, "expected box count experiment", 0.0, box_count},
      {10, "model constant invariants", 0.0, model_constants_check},
  };
  return all;
}

bool run(const Criterion& c) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.time_limit > 0.0) out.require(secs < c.time_limit, "runtime limit");
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::string detail = out.detail.str();
  if (!out.pass) detail += " | failed: " + out.first_failure;
  std::printf("criterion %d [%s]: %s (%s) %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", timing,
              detail.c_str());
  std::fflush(stdout);
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  bool matched = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    matched = true;
    all_pass = run(c) && all_pass;
  }
  if (!matched) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}

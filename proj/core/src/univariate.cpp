#include "cubecond/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cubecond/errors.hpp"
#include "cubecond/roots.hpp"

namespace cubecond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_univariate(const SparsePolynomial& f, const char* who) {
  if (f.dimension() != 1) throw std::invalid_argument(std::string(who) + ": expects n = 1");
}

double eval1(const SparsePolynomial& f, double x) { return f.evaluate(std::span<const double>(&x, 1)); }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

int sign_variations(std::span<const double> coeffs) {
  int count = 0;
  int last = 0;
  for (double c : coeffs) {
    const int s = sign_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<double> taylor_shift(std::span<const double> coeffs, double a) {
  std::vector<double> p(coeffs.begin(), coeffs.end());
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) p[k - 1] += a * p[k];
  }
  return p;
}

std::vector<double> mobius_transform(std::span<const double> coeffs, double a, double b) {
  if (coeffs.empty()) return {};
  std::vector<double> p = taylor_shift(coeffs, a);
  double scale = 1.0;
  for (auto& c : p) {
    c *= scale;
    scale *= (b - a);
  }
  std::reverse(p.begin(), p.end());
  return taylor_shift(p, 1.0);
}

std::vector<double> bernstein_coefficients(const SparsePolynomial& f, double a, double b) {
  require_univariate(f, "bernstein_coefficients");
  std::uint32_t top = 0;
  for (const auto& t : f.terms()) top = std::max(top, t.alpha[0]);
  const int D = static_cast<int>(top);
  std::vector<double> out(static_cast<std::size_t>(D) + 1, 0.0);
  std::vector<double> own;
  for (const auto& t : f.terms()) {
    if (t.coeff == 0.0) continue;
    const int j = static_cast<int>(t.alpha[0]);
    // x^j = sum_i a^{j-i} b^i B_{i,j}(t) on [a, b].
    own.assign(static_cast<std::size_t>(j) + 1, 0.0);
    for (int i = 0; i <= j; ++i) {
      own[static_cast<std::size_t>(i)] = ipow(a, static_cast<std::uint32_t>(j - i)) *
                                         ipow(b, static_cast<std::uint32_t>(i));
    }
    // Elevation from degree j to D: weights binom(j,i) binom(D-j,k-i) / binom(D,k).
    for (int k = 0; k <= D; ++k) {
      double acc = 0.0;
      const int lo = std::max(0, k - (D - j));
      const int hi = std::min(j, k);
      for (int i = lo; i <= hi; ++i) {
        acc += own[static_cast<std::size_t>(i)] * binomial(j, i) * binomial(D - j, k - i);
      }
      out[static_cast<std::size_t>(k)] += t.coeff * acc / binomial(D, k);
    }
  }
  if (D > 0) {
    out.front() = eval1(f, a);
    out.back() = eval1(f, b);
  }
  return out;
}

IsolationResult descartes_isolate(const SparsePolynomial& f, int max_depth) {
  require_univariate(f, "descartes_isolate");
  if (f.is_zero()) throw std::invalid_argument("descartes_isolate: zero polynomial");
  if (max_depth < 0) throw std::invalid_argument("descartes_isolate: negative max_depth");

  IsolationResult result;
  for (double e : {-1.0, 1.0}) {
    if (eval1(f, e) == 0.0) result.exact_roots.push_back(e);
  }

  struct Node {
    double lo;
    double hi;
  };
  std::vector<Node> level{{-1.0, 1.0}};
  for (int depth = 0; !level.empty(); ++depth) {
    result.tree.per_depth.push_back(level.size());
    result.tree.node_count += level.size();
    result.tree.depth = depth;
    std::vector<Node> next;
    for (const Node& node : level) {
      const int v = sign_variations(bernstein_coefficients(f, node.lo, node.hi));
      if (v == 0) continue;
      if (v == 1 && eval1(f, node.lo) * eval1(f, node.hi) < 0.0) {
        result.intervals.emplace_back(node.lo, node.hi);
        continue;
      }
      if (depth >= max_depth) {
        result.complete = false;
        result.unresolved.emplace_back(node.lo, node.hi);
        continue;
      }
      const double mid = 0.5 * (node.lo + node.hi);
      if (eval1(f, mid) == 0.0) result.exact_roots.push_back(mid);
      next.push_back({node.lo, mid});
      next.push_back({mid, node.hi});
    }
    level = std::move(next);
  }
  std::sort(result.intervals.begin(), result.intervals.end());
  std::sort(result.exact_roots.begin(), result.exact_roots.end());
  return result;
}

double tree_size_bound(const SparsePolynomial& f, double kappa_upper) {
  require_univariate(f, "tree_size_bound");
  if (!(kappa_upper >= 1.0)) throw std::invalid_argument("tree_size_bound: kappa_upper < 1");
  if (std::isinf(kappa_upper)) return kInf;
  const double m = static_cast<double>(f.support_size());
  return 8.0 * m * (std::log2(kappa_upper) + std::log2(static_cast<double>(f.degree())) + 1.0);
}

double separation_lower_bound(const SparsePolynomial& f, double kappa_upper) {
  require_univariate(f, "separation_lower_bound");
  if (!(kappa_upper >= 1.0)) throw std::invalid_argument("separation_lower_bound: kappa_upper < 1");
  if (std::isinf(kappa_upper)) return 0.0;
  return 2.0 * std::numbers::sqrt2 / (f.degree() * std::sqrt(kappa_upper));
}

double eps_separation_lower_bound(const SparsePolynomial& f, double kappa_upper, double eps) {
  require_univariate(f, "eps_separation_lower_bound");
  if (!(kappa_upper >= 1.0)) {
    throw std::invalid_argument("eps_separation_lower_bound: kappa_upper < 1");
  }
  const double d = f.degree();
  if (!(eps > 0.0) || !(eps < 1.0 / (std::numbers::e * d * kappa_upper))) {
    throw HypothesisViolated("eps_separation_lower_bound: eps outside (0, 1/(e d kappa))");
  }
  return 1.0 / (12.0 * d * kappa_upper);
}

namespace {

double min_gap(std::vector<std::complex<double>> pts) {
  double best = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  }
  return best;
}

double distance_to_I(std::complex<double> z) {
  const double x = std::clamp(z.real(), -1.0, 1.0);
  return std::abs(z - std::complex<double>(x, 0.0));
}

// Newton polish on the real line; returns the best point found.
double polish_real(const SparsePolynomial& f, const SparsePolynomial& df, double x) {
  double best = x;
  double best_res = std::abs(eval1(f, x));
  for (int it = 0; it < 50 && best_res > 0.0; ++it) {
    const double slope = eval1(df, x);
    if (slope == 0.0) break;
    x -= eval1(f, x) / slope;
    const double res = std::abs(eval1(f, x));
    if (res < best_res) {
      best = x;
      best_res = res;
    } else {
      break;
    }
  }
  return best;
}

std::complex<double> eval_complex(std::span<const double> c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

std::complex<double> polish_complex(std::span<const double> c, std::span<const double> dc,
                                    std::complex<double> z) {
  std::complex<double> best = z;
  double best_res = std::abs(eval_complex(c, z));
  for (int it = 0; it < 50 && best_res > 0.0; ++it) {
    const auto slope = eval_complex(dc, z);
    if (slope == 0.0) break;
    z -= eval_complex(c, z) / slope;
    const double res = std::abs(eval_complex(c, z));
    if (res < best_res) {
      best = z;
      best_res = res;
    } else {
      break;
    }
  }
  return best;
}

}  // namespace

SeparationEstimate separation_oracle(const SparsePolynomial& f, double eps) {
  require_univariate(f, "separation_oracle");
  if (f.is_zero()) throw std::invalid_argument("separation_oracle: zero polynomial");
  if (!(eps >= 0.0)) throw std::invalid_argument("separation_oracle: eps must be >= 0");
  const std::vector<double> c = f.dense_coefficients();
  if (c.size() > 513) throw std::invalid_argument("separation_oracle: degree above 512");
  std::vector<double> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(static_cast<double>(k) * c[k]);
  const SparsePolynomial df = f.partial_derivative(0);
  const double tol = 1e-12 * f.norm1();

  std::vector<std::complex<double>> near_roots;
  std::vector<double> real_roots;
  for (auto z : polynomial_roots(c)) {
    const bool is_real = std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z));
    if (is_real) z = {polish_real(f, df, z.real()), 0.0};
    if (distance_to_I(z) > eps + 1e-12) continue;
    if (!is_real) z = polish_complex(c, dc, z);
    if (std::abs(eval_complex(c, z)) > tol) {
      throw OracleFailure("separation_oracle: root residual above 1e-12 |f|_1");
    }
    near_roots.push_back(z);
    if (z.imag() == 0.0 && z.real() >= -1.0 && z.real() <= 1.0) real_roots.push_back(z.real());
  }
  std::sort(real_roots.begin(), real_roots.end());

  SeparationEstimate est;
  est.eps = eps;
  est.real_roots = real_roots;
  est.delta = kInf;
  for (std::size_t i = 1; i < real_roots.size(); ++i) {
    est.delta = std::min(est.delta, real_roots[i] - real_roots[i - 1]);
  }
  est.delta_eps = min_gap(near_roots);
  return est;
}

namespace {

double js_common(std::size_t support_size, int d, double norm1_f, double second) {
  if (support_size == 0 || d < 1 || !(norm1_f > 0.0)) {
    throw std::invalid_argument("js bound: arguments must be positive");
  }
  const double m = static_cast<double>(support_size);
  const double logd = std::log2(static_cast<double>(d));
  const double logn = std::log2(norm1_f);
  return std::pow(m, 12.0) * logd * logd * logd * std::max(logn * logn, second);
}

}  // namespace

double js_runtime_bound(std::size_t support_size, int d, double norm1_f, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("js_runtime_bound: L must be positive");
  return js_common(support_size, d, norm1_f, L * L);
}

double js_condition_bound(std::size_t support_size, int d, double norm1_f, double kappa) {
  if (!(kappa >= 1.0)) throw std::invalid_argument("js_condition_bound: kappa < 1");
  const double lk = std::log2(kappa);
  return js_common(support_size, d, norm1_f, lk * lk * lk);
}

}  // namespace cubecond

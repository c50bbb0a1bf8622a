#include "cubecond/condition.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cubecond/errors.hpp"

namespace cubecond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_in_cube(std::span<const double> x) {
  for (double v : x) {
    if (!(std::abs(v) <= 1.0)) {
      throw std::invalid_argument("point coordinate " + std::to_string(v) +
                                  " lies outside the cube [-1, 1]");
    }
  }
}

void require_nonzero(const SparsePolynomial& f) {
  if (f.norm1() == 0.0) {
    throw std::invalid_argument("condition number of the zero polynomial is undefined");
  }
}

// Grid points -1 + 2 i / k, i = 0..k.
double lattice_coordinate(std::size_t i, std::size_t k) {
  return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(k);
}

}  // namespace

double inverse_local_condition(const SparsePolynomial& f, std::span<const double> x) {
  require_nonzero(f);
  require_in_cube(x);
  const double value = std::abs(f.evaluate(x));
  const double slope = f.gradient(x).norm1() / f.degree();
  // Rounding can push the quotient a few ulps above its exact bound of 1.
  return std::min(1.0, std::max(value, slope) / f.norm1());
}

double local_condition(const SparsePolynomial& f, std::span<const double> x) {
  const double inv = inverse_local_condition(f, x);
  return inv == 0.0 ? kInf : 1.0 / inv;
}

bool GlobalConditionEnclosure::certified() const { return std::isfinite(upper); }

GlobalConditionEnclosure global_condition(const SparsePolynomial& f, double grid_eps) {
  require_nonzero(f);
  if (!(grid_eps > 0.0 && grid_eps < 1.0)) {
    throw std::invalid_argument("global_condition: grid_eps must lie in (0, 1)");
  }
  const std::size_t n = f.dimension();
  if (n == 0 || n > 3) {
    throw std::invalid_argument("global_condition: certified enclosure supports 1 <= n <= 3");
  }
  const auto k = static_cast<std::size_t>(std::ceil(1.0 / grid_eps));
  const std::size_t side = k + 1;

  double min_inv = kInf;
  std::vector<std::size_t> idx(n, 0);
  Point x(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x[i] = lattice_coordinate(idx[i], k);
    min_inv = std::min(min_inv, inverse_local_condition(f, x));
    if (min_inv == 0.0) break;
    std::size_t axis = 0;
    while (axis < n && ++idx[axis] == side) idx[axis++] = 0;
    if (axis == n) break;
  }

  GlobalConditionEnclosure out;
  out.grid_eps = grid_eps;
  out.lower = min_inv == 0.0 ? kInf : 1.0 / min_inv;
  const double denom = min_inv - f.degree() * grid_eps;
  out.upper = denom > 0.0 ? 1.0 / denom : kInf;
  return out;
}

GlobalConditionEnclosure refine_global_condition(const SparsePolynomial& f, double ratio,
                                                 double start_eps, double min_eps) {
  constexpr double kMaxGridPoints = 4e6;
  const double n = static_cast<double>(f.dimension());
  GlobalConditionEnclosure enc = global_condition(f, start_eps);
  for (double eps = start_eps / 10.0; eps >= min_eps * (1.0 - 1e-9); eps /= 10.0) {
    if (!std::isfinite(enc.lower)) break;
    if (enc.certified() && enc.upper <= ratio * enc.lower) break;
    if (std::pow(std::ceil(1.0 / eps) + 1.0, n) > kMaxGridPoints) break;
    enc = global_condition(f, eps);
  }
  return enc;
}

double gamma_bound(const SparsePolynomial& f, std::span<const double> x) {
  const double kappa = local_condition(f, x);
  // kappa |f(x)| / |f|_1 < 1 exactly when the gradient term attains the
  // maximum in kappa; compared directly, since the quotient rounds to just
  // below 1 when |f(x)| is the maximum.
  const double value = std::abs(f.evaluate(x));
  if (!(f.gradient(x).norm1() / f.degree() > value)) {
    throw HypothesisViolated("gamma_bound: estimate inapplicable, kappa |f(x)| / |f|_1 = " +
                             std::to_string(kappa * value / f.norm1()) + " is not < 1");
  }
  const double n = static_cast<double>(f.dimension());
  return std::sqrt(n) * (f.degree() - 1) * kappa / 2.0;
}

double gamma_exact_univariate(const SparsePolynomial& f, double x) {
  if (f.dimension() != 1) throw std::invalid_argument("gamma_exact_univariate: n must be 1");
  const double pt[1] = {x};
  SparsePolynomial taylor = f.partial_derivative(0);  // f' = first Taylor coefficient
  const double slope = std::abs(taylor.evaluate(pt));
  if (slope == 0.0) throw std::invalid_argument("gamma_exact_univariate: f'(x) = 0");

  double gamma = 0.0;
  for (int k = 2; k <= f.degree(); ++k) {
    // f^(k) / k! = (d/dX (f^(k-1) / (k-1)!)) / k
    taylor = taylor.partial_derivative(0).scaled(1.0 / k);
    const double ratio = std::abs(taylor.evaluate(pt)) / slope;
    gamma = std::max(gamma, std::pow(ratio, 1.0 / (k - 1)));
  }
  return gamma;
}

SingularPerturbation singular_perturbation(const SparsePolynomial& f, std::span<const double> x) {
  require_in_cube(x);
  const std::size_t n = f.dimension();
  if (x.size() != n) throw std::invalid_argument("singular_perturbation: point length mismatch");
  const auto terms = f.terms();
  const std::size_t m = terms.size();
  const auto rows = static_cast<Eigen::Index>(n + 1);

  // Column alpha of R_x holds (x^alpha, d/dX_1 x^alpha, ..., d/dX_n x^alpha).
  Eigen::MatrixXd R(rows, static_cast<Eigen::Index>(m));
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const SparsePolynomial mono(n, {Term{terms[j].alpha, 1.0}});
    R(0, static_cast<Eigen::Index>(j)) = mono.evaluate(x);
    const Covector g = mono.gradient(x);
    for (std::size_t i = 0; i < n; ++i) {
      R(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(j)) = g[i];
    }
    coeffs(static_cast<Eigen::Index>(j)) = terms[j].coeff;
  }
  const Eigen::VectorXd rhs = R * coeffs;

  SingularPerturbation best;
  best.delta.assign(m, 0.0);
  if (rhs.lpNorm<Eigen::Infinity>() == 0.0) return best;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(R);
  lu.setThreshold(1e-12);
  const auto rank = static_cast<std::size_t>(lu.rank());
  if (rank == 0) throw SupportTooSmall("singular_perturbation: constraint matrix vanishes");

  // Basic solutions: supports of size rank with independent columns.
  best.distance = kInf;
  std::vector<std::size_t> pick(rank);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  Eigen::MatrixXd sub(rows, static_cast<Eigen::Index>(rank));
  for (;;) {
    for (std::size_t c = 0; c < rank; ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = R.col(static_cast<Eigen::Index>(pick[c]));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    qr.setThreshold(1e-12);
    if (static_cast<std::size_t>(qr.rank()) == rank) {
      const Eigen::VectorXd sol = qr.solve(rhs);
      const double residual = (sub * sol - rhs).lpNorm<Eigen::Infinity>();
      const double cost = sol.lpNorm<1>();
      if (residual <= 1e-9 * (1.0 + rhs.lpNorm<Eigen::Infinity>()) && cost < best.distance) {
        best.distance = cost;
        std::fill(best.delta.begin(), best.delta.end(), 0.0);
        for (std::size_t c = 0; c < rank; ++c) best.delta[pick[c]] = sol(static_cast<Eigen::Index>(c));
      }
    }
    // next combination in lexicographic order
    std::size_t pos = rank;
    while (pos > 0 && pick[pos - 1] == m - rank + pos - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t c = pos; c < rank; ++c) pick[c] = pick[c - 1] + 1;
  }
  if (!std::isfinite(best.distance)) {
    throw SupportTooSmall("singular_perturbation: no basic solution realises R_x f");
  }
  return best;
}

double dist1_to_sigma_x(const SparsePolynomial& f, std::span<const double> x) {
  return singular_perturbation(f, x).distance;
}

double local_size_bound(const SparsePolynomial& f, std::span<const double> x) {
  const double kappa = local_condition(f, x);
  if (!std::isfinite(kappa)) return 0.0;
  const double n = static_cast<double>(f.dimension());
  return std::pow(f.degree() * std::sqrt(2.0 * n) * kappa, -n);
}

}  // namespace cubecond

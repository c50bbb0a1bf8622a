#include "cubecond/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cubecond/errors.hpp"

namespace cubecond {

namespace {

using cplx = std::complex<double>;

// Upper convex hull of (k, log|a_k|) over the nonzero coefficients.
std::vector<std::size_t> newton_polygon(const std::vector<double>& a) {
  std::vector<std::size_t> hull;
  auto lg = [&](std::size_t k) { return std::log(std::abs(a[k])); };
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0.0) continue;
    while (hull.size() >= 2) {
      const std::size_t i = hull[hull.size() - 2];
      const std::size_t j = hull.back();
      const double cross = (static_cast<double>(j) - i) * (lg(k) - lg(i)) -
                           (lg(j) - lg(i)) * (static_cast<double>(k) - i);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  return hull;
}

std::vector<cplx> initial_points(const std::vector<double>& a) {
  const std::size_t d = a.size() - 1;
  const auto hull = newton_polygon(a);
  std::vector<cplx> z;
  z.reserve(d);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const std::size_t i = hull[h - 1];
    const std::size_t j = hull[h];
    const std::size_t m = j - i;
    const double r = std::pow(std::abs(a[i] / a[j]), 1.0 / static_cast<double>(m));
    for (std::size_t q = 0; q < m; ++q) {
      const double theta = kTwoPi * static_cast<double>(q) / static_cast<double>(m) +
                           kTwoPi * static_cast<double>(i) / static_cast<double>(d) + 0.4;
      z.push_back(std::polar(r, theta));
    }
  }
  return z;
}

// Newton correction p(z)/p'(z) and a flag telling whether |p(z)| is at the
// rounding level. For |z| > 1 the reversed polynomial is evaluated instead.
struct Newton {
  cplx ratio;
  bool at_noise;
};

Newton newton_ratio(const std::vector<double>& a, cplx z) {
  const std::size_t d = a.size() - 1;
  const double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(z) <= 1.0) {
    cplx p = a[d];
    cplx dp = 0.0;
    double bound = std::abs(a[d]);
    const double az = std::abs(z);
    for (std::size_t k = d; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      bound = bound * az + std::abs(a[k]);
    }
    return {p / dp, std::abs(p) <= 4.0 * static_cast<double>(d) * eps * bound};
  }
  const cplx w = 1.0 / z;
  const double aw = std::abs(w);
  cplx q = a[0];
  cplx dq = 0.0;
  double bound = std::abs(a[0]);
  for (std::size_t k = 1; k <= d; ++k) {
    dq = dq * w + q;
    q = q * w + a[k];
    bound = bound * aw + std::abs(a[k]);
  }
  // p(z) = z^d q(w), so p / p' = z / (d - w q'(w) / q(w)).
  const cplx ratio = z / (static_cast<double>(d) - w * dq / q);
  return {ratio, std::abs(q) <= 4.0 * static_cast<double>(d) * eps * bound};
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs,
                                                   const RootOptions& options) {
  std::vector<double> a(coeffs.begin(), coeffs.end());
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  if (a.empty()) throw std::invalid_argument("polynomial_roots: zero polynomial");

  std::vector<cplx> roots;
  std::size_t zeros = 0;
  while (a[zeros] == 0.0) ++zeros;
  roots.assign(zeros, cplx(0.0, 0.0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));
  const std::size_t d = a.size() - 1;
  if (d == 0) return roots;
  if (d == 1) {
    roots.emplace_back(-a[0] / a[1], 0.0);
    return roots;
  }

  std::vector<cplx> z = initial_points(a);
  std::vector<char> done(d, 0);
  std::size_t remaining = d;
  for (int sweep = 0; sweep < options.max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      const Newton nr = newton_ratio(a, z[i]);
      if (nr.at_noise || !std::isfinite(std::abs(nr.ratio))) {
        done[i] = 1;
        --remaining;
        continue;
      }
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx step = nr.ratio / (1.0 - nr.ratio * repulsion);
      z[i] -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z[i])) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  if (remaining > 0) throw OracleFailure("polynomial_roots: Aberth iteration did not converge");
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace cubecond

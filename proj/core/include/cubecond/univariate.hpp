#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cubecond/poly.hpp"

namespace cubecond {

/// Number of sign changes in coeffs once zeros are deleted.
int sign_variations(std::span<const double> coeffs);

/// Coefficients of p(X + a).
std::vector<double> taylor_shift(std::span<const double> coeffs, double a);

/// Coefficients of (1 + X)^D p((a X + b) / (1 + X)) with D = coeffs.size() - 1,
/// which sends [0, inf) onto (a, b]. Computed as a Taylor shift to a, scaling
/// by b - a, reversal and a Taylor shift by 1.
std::vector<double> mobius_transform(std::span<const double> coeffs, double a, double b);

/// Bernstein coefficients of the univariate f on [a, b] in degree D, the
/// largest exponent of the support. Each monomial is expanded on [a, b] in
/// its own degree and then degree-elevated, so no cancellation-prone shift is
/// involved. Their sign variations equal those of mobius_transform.
std::vector<double> bernstein_coefficients(const SparsePolynomial& f, double a, double b);

struct TreeStats {
  std::size_t node_count = 0;
  int depth = 0;
  std::vector<std::size_t> per_depth;  ///< nodes processed at each depth
};

struct IsolationResult {
  std::vector<std::pair<double, double>> intervals;  ///< sorted, f(lo) f(hi) < 0
  std::vector<double> exact_roots;                   ///< sorted
  TreeStats tree;
  bool complete = true;  ///< false when max_depth stopped the bisection
  std::vector<std::pair<double, double>> unresolved;

  std::size_t root_count() const { return intervals.size() + exact_roots.size(); }
};

/// Descartes bisection on I = [-1, 1]: an interval with no sign variation in
/// its Bernstein coefficients is dropped, one with a single variation and a
/// sign change at its endpoints is reported, anything else is bisected.
/// Midpoints and endpoints of I where f vanishes are reported as exact roots.
IsolationResult descartes_isolate(const SparsePolynomial& f, int max_depth = 60);

/// 8 |M| (log2 kappa_upper + log2 d + 1).
double tree_size_bound(const SparsePolynomial& f, double kappa_upper);

/// 2 sqrt(2) / (d sqrt(kappa_upper)); 0 for an infinite kappa_upper.
double separation_lower_bound(const SparsePolynomial& f, double kappa_upper);

/// 1 / (12 d kappa_upper). Throws HypothesisViolated unless
/// 0 < eps < 1 / (e d kappa_upper).
double eps_separation_lower_bound(const SparsePolynomial& f, double kappa_upper, double eps);

struct SeparationEstimate {
  double delta = 0.0;      ///< min distance between real roots in I
  double delta_eps = 0.0;  ///< min distance between roots within eps of I
  double eps = 0.0;
  std::vector<double> real_roots;  ///< real roots in I, sorted
};

/// Root-oracle separations: all complex roots of f are computed, polished
/// and checked to residual 1e-12 |f|_1, then filtered. Distances are
/// +infinity with fewer than two qualifying roots. Throws OracleFailure.
SeparationEstimate separation_oracle(const SparsePolynomial& f, double eps);

/// |M|^12 (log2 d)^3 max{(log2 |f|_1)^2, L^2}, a bound shape with constant 1.
double js_runtime_bound(std::size_t support_size, int d, double norm1_f, double L);

/// |M|^12 (log2 d)^3 max{(log2 |f|_1)^2, (log2 kappa)^3}.
double js_condition_bound(std::size_t support_size, int d, double norm1_f, double kappa);

}  // namespace cubecond

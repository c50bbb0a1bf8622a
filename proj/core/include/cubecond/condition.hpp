#pragma once

#include <span>
#include <vector>

#include "cubecond/poly.hpp"

namespace cubecond {

/// max{|f(x)|, |d_x f|_1 / d} / |f|_1, the reciprocal of the local condition
/// number. Lies in [0, 1] for x in the cube; 0 exactly at singular zeros.
double inverse_local_condition(const SparsePolynomial& f, std::span<const double> x);

/// kappa(f, x) = |f|_1 / max{|f(x)|, |d_x f|_1 / d}. Always >= 1 on the cube,
/// +infinity at singular zeros. Rejects the zero polynomial and points
/// outside [-1, 1]^n.
double local_condition(const SparsePolynomial& f, std::span<const double> x);

/// Certified two-sided enclosure of the global condition number
/// kappa(f) = max_{x in I^n} kappa(f, x).
struct GlobalConditionEnclosure {
  double lower = 1.0;  ///< max of kappa over the grid
  double upper = 1.0;  ///< +infinity when the grid is too coarse to certify
  double grid_eps = 0.0;

  bool certified() const;
};

/// Evaluates kappa on the uniform lattice of (ceil(1/grid_eps) + 1)^n points,
/// whose covering radius in the infinity norm is at most grid_eps, and turns
/// the grid minimum of 1/kappa into an upper bound through the
/// d-Lipschitz continuity of x -> 1/kappa(f, x). Limited to n <= 3.
GlobalConditionEnclosure global_condition(const SparsePolynomial& f, double grid_eps);

/// Refines grid_eps by factors of 10, starting at start_eps, until
/// upper <= ratio * lower or grid_eps drops below min_eps. Returns the last
/// enclosure computed.
GlobalConditionEnclosure refine_global_condition(const SparsePolynomial& f, double ratio = 2.0,
                                                 double start_eps = 1e-3, double min_eps = 1e-6);

/// sqrt(n) (d - 1) kappa(f, x) / 2, the bound on Smale's gamma. Throws
/// HypothesisViolated unless kappa(f, x) |f(x)| / |f|_1 < 1.
double gamma_bound(const SparsePolynomial& f, std::span<const double> x);

/// Smale's gamma of a univariate polynomial,
/// max_{2 <= k <= d} (|f^(k)(x)| / (k! |f'(x)|))^(1 / (k - 1)).
/// Rejects n != 1 and f'(x) == 0.
double gamma_exact_univariate(const SparsePolynomial& f, double x);

/// Minimum-1-norm perturbation moving f into Sigma_x, the polynomials
/// supported on M with a singular zero at x.
struct SingularPerturbation {
  double distance = 0.0;
  std::vector<double> delta;  ///< one entry per term of f, in term order
};

/// Enumerates the basic solutions of R_x delta = R_x f, where R_x maps
/// coefficients on M to (g(x), grad g(x)). Throws SupportTooSmall when the
/// support cannot realise R_x f.
SingularPerturbation singular_perturbation(const SparsePolynomial& f, std::span<const double> x);

double dist1_to_sigma_x(const SparsePolynomial& f, std::span<const double> x);

/// (d sqrt(2n) kappa(f, x))^{-n}; 0 at singular zeros.
double local_size_bound(const SparsePolynomial& f, std::span<const double> x);

}  // namespace cubecond

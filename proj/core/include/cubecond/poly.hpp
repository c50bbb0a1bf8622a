#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cubecond {

using Exponent = std::vector<std::uint32_t>;
using Point = std::vector<double>;

struct Term {
  Exponent alpha;
  double coeff = 0.0;
};

/// Row vector of partial derivatives at a point.
struct Covector {
  std::vector<double> entries;

  std::size_t size() const { return entries.size(); }
  double operator[](std::size_t i) const { return entries[i]; }
  double norm1() const;
  double dot(const Covector& other) const;
};

/// A real polynomial f = sum_{alpha in M} f_alpha X^alpha in n variables.
///
/// The support M is kept exactly as given (terms with a zero coefficient
/// stay in it), duplicate exponents are merged by summation in order of first
/// appearance, and the stored degree is max(total degree, 1) so that the
/// condition-number formulas, which divide by d, stay defined for constants.
/// Instances are immutable after construction.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;

  /// Throws std::invalid_argument if an exponent vector does not have length n.
  SparsePolynomial(std::size_t n, std::vector<Term> terms);

  /// Univariate convenience: coeffs[k] is the coefficient of X^k.
  static SparsePolynomial univariate(std::span<const double> coeffs);

  std::size_t dimension() const { return n_; }
  int degree() const { return degree_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const;

  double evaluate(std::span<const double> x) const;
  Covector gradient(std::span<const double> x) const;

  /// Formal derivative with respect to X_i, 0-based.
  SparsePolynomial partial_derivative(std::size_t i) const;

  /// Sum of the absolute values of the coefficients.
  double norm1() const;

  SparsePolynomial scaled(double c) const;

  /// Coefficient of X^alpha, 0 if alpha is not in the support.
  double coefficient(const Exponent& alpha) const;

  /// Dense coefficient vector (index = power) of a univariate polynomial,
  /// of length (highest exponent present in the support) + 1.
  std::vector<double> dense_coefficients() const;

 private:
  std::size_t n_ = 0;
  int degree_ = 1;
  std::vector<Term> terms_;
};

/// Difference of two polynomials over the union of their supports.
SparsePolynomial subtract(const SparsePolynomial& f, const SparsePolynomial& g);

/// Upper bound binom(d, k) * |f|_1 on |(1/k!) d^k_z f(v_1..v_k)| for unit
/// infinity-norm directions and z in the polydisk. Rejects k > d.
double derivative_norm_bound(const SparsePolynomial& f, int k);

/// Lipschitz constants, in the infinity norm on the cube, of x -> |f(x)| and
/// of x -> |d_x f|_1: (d |f|_1, d^2 |f|_1).
std::pair<double, double> lipschitz_constants(const SparsePolynomial& f);

double norm_inf(std::span<const double> x);
double distance_inf(std::span<const double> x, std::span<const double> y);

/// binom(n, k) in floating point; 0 outside 0 <= k <= n.
double binomial(int n, int k);

/// x^k by repeated squaring.
double ipow(double x, std::uint32_t k);

}  // namespace cubecond

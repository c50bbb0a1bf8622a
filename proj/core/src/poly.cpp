#include "cubecond/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cubecond {

double ipow(double x, std::uint32_t k) {
  double result = 1.0;
  while (k != 0) {
    if (k & 1u) result *= x;
    x *= x;
    k >>= 1u;
  }
  return result;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * static_cast<double>(n - k + i) / i;
  return result;
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double distance_inf(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance_inf: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double Covector::norm1() const {
  double s = 0.0;
  for (double v : entries) s += std::abs(v);
  return s;
}

double Covector::dot(const Covector& other) const {
  if (other.size() != size()) throw std::invalid_argument("Covector::dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) s += entries[i] * other.entries[i];
  return s;
}

SparsePolynomial::SparsePolynomial(std::size_t n, std::vector<Term> terms) : n_(n) {
  std::map<Exponent, std::size_t> index;
  terms_.reserve(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    auto& term = terms[t];
    if (term.alpha.size() != n) {
      throw std::invalid_argument("term " + std::to_string(t) + ": exponent has length " +
                                  std::to_string(term.alpha.size()) + ", expected " +
                                  std::to_string(n));
    }
    auto [it, inserted] = index.try_emplace(term.alpha, terms_.size());
    if (inserted) {
      terms_.push_back(std::move(term));
    } else {
      terms_[it->second].coeff += term.coeff;
    }
  }
  int d = 0;
  for (const auto& term : terms_) {
    if (term.coeff == 0.0) continue;
    const auto total = std::accumulate(term.alpha.begin(), term.alpha.end(), std::uint64_t{0});
    d = std::max(d, static_cast<int>(total));
  }
  degree_ = std::max(d, 1);
}

SparsePolynomial SparsePolynomial::univariate(std::span<const double> coeffs) {
  std::vector<Term> terms;
  terms.reserve(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    terms.push_back({Exponent{static_cast<std::uint32_t>(k)}, coeffs[k]});
  }
  return SparsePolynomial(1, std::move(terms));
}

bool SparsePolynomial::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff == 0.0; });
}

static void check_point(std::size_t n, std::span<const double> x) {
  if (x.size() != n) {
    throw std::invalid_argument("point has length " + std::to_string(x.size()) + ", expected " +
                                std::to_string(n));
  }
}

double SparsePolynomial::evaluate(std::span<const double> x) const {
  check_point(n_, x);
  double sum = 0.0;
  for (const auto& term : terms_) {
    double mono = term.coeff;
    for (std::size_t i = 0; i < n_; ++i) mono *= ipow(x[i], term.alpha[i]);
    sum += mono;
  }
  return sum;
}

Covector SparsePolynomial::gradient(std::span<const double> x) const {
  check_point(n_, x);
  Covector g{std::vector<double>(n_, 0.0)};
  for (const auto& term : terms_) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (term.alpha[i] == 0) continue;
      double mono = term.coeff * static_cast<double>(term.alpha[i]);
      for (std::size_t j = 0; j < n_; ++j) {
        mono *= ipow(x[j], j == i ? term.alpha[j] - 1 : term.alpha[j]);
      }
      g.entries[i] += mono;
    }
  }
  return g;
}

SparsePolynomial SparsePolynomial::partial_derivative(std::size_t i) const {
  if (i >= n_) {
    throw std::invalid_argument("partial_derivative: variable index " + std::to_string(i) +
                                " out of range for n = " + std::to_string(n_));
  }
  std::vector<Term> out;
  for (const auto& term : terms_) {
    if (term.alpha[i] == 0) continue;
    Term t{term.alpha, term.coeff * static_cast<double>(term.alpha[i])};
    t.alpha[i] -= 1;
    out.push_back(std::move(t));
  }
  return SparsePolynomial(n_, std::move(out));
}

double SparsePolynomial::norm1() const {
  double s = 0.0;
  for (const auto& term : terms_) s += std::abs(term.coeff);
  return s;
}

SparsePolynomial SparsePolynomial::scaled(double c) const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  for (auto& t : out) t.coeff *= c;
  return SparsePolynomial(n_, std::move(out));
}

double SparsePolynomial::coefficient(const Exponent& alpha) const {
  for (const auto& t : terms_) {
    if (t.alpha == alpha) return t.coeff;
  }
  return 0.0;
}

std::vector<double> SparsePolynomial::dense_coefficients() const {
  if (n_ != 1) throw std::invalid_argument("dense_coefficients: polynomial is not univariate");
  std::uint32_t top = 0;
  for (const auto& t : terms_) top = std::max(top, t.alpha[0]);
  std::vector<double> dense(static_cast<std::size_t>(top) + 1, 0.0);
  for (const auto& t : terms_) dense[t.alpha[0]] += t.coeff;
  return dense;
}

SparsePolynomial subtract(const SparsePolynomial& f, const SparsePolynomial& g) {
  if (f.dimension() != g.dimension()) throw std::invalid_argument("subtract: dimension mismatch");
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (const auto& t : g.terms()) terms.push_back({t.alpha, -t.coeff});
  return SparsePolynomial(f.dimension(), std::move(terms));
}

double derivative_norm_bound(const SparsePolynomial& f, int k) {
  const int d = f.degree();
  if (k < 0 || k > d) {
    throw std::invalid_argument("derivative_norm_bound: order " + std::to_string(k) +
                                " outside [0, " + std::to_string(d) + "]");
  }
  return binomial(d, k) * f.norm1();
}

std::pair<double, double> lipschitz_constants(const SparsePolynomial& f) {
  const double d = f.degree();
  const double n1 = f.norm1();
  return {d * n1, d * d * n1};
}

}  // namespace cubecond

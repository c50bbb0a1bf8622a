#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cubecond/poly.hpp"
#include "cubecond/rng.hpp"

namespace cubecond {

enum class DistributionKind { Gaussian, Uniform, WeibullSymmetric };

/// Law of a single coefficient.
struct Distribution {
  DistributionKind kind = DistributionKind::Gaussian;
  double a = 0.0;  ///< mean | lo | shape p
  double b = 1.0;  ///< sd   | hi | scale

  static Distribution gaussian(double mean, double sd);
  static Distribution uniform(double lo, double hi);
  /// Symmetric variable with P(|x| > t) = exp(-(t / scale)^p), p >= 1.
  static Distribution weibull_symmetric(double p, double scale);

  double sample(RandomStream& rng) const;
  /// log P(|x| > t), t >= 0.
  double log_survival(double t) const;
  /// Supremum of the density.
  double density_max() const;
};

/// Fixed polynomial plus sigma |center|_1 times a draw of the base model.
struct Smoothing {
  double sigma = 1.0;
  SparsePolynomial center;
};

/// Random polynomial with independent coefficients on a support M that
/// contains 0, e_1, ..., e_n. `p` is the tail exponent used for L.
class RandomModel {
 public:
  /// Throws std::invalid_argument on an invalid support or parameters and
  /// std::logic_error if the computed constants break K rho > (n+1)/4 or
  /// L rho > 9(n+1)/50.
  RandomModel(std::size_t n, std::vector<Exponent> support, Distribution dist, double p = 2.0);

  std::size_t dimension() const { return n_; }
  const std::vector<Exponent>& support() const { return support_; }
  std::size_t support_size() const { return support_.size(); }
  const Distribution& distribution() const { return dist_; }
  double p() const { return p_; }
  int degree() const;
  const std::optional<Smoothing>& smoothing() const { return smoothing_; }

  /// True for a centred Gaussian or symmetric uniform model without smoothing,
  /// where the specialized closed forms apply.
  bool is_plain_gaussian() const;
  bool is_plain_uniform() const;

  friend RandomModel smoothed_model(const SparsePolynomial& f0, double sigma,
                                    const RandomModel& base);

 private:
  std::size_t n_;
  std::vector<Exponent> support_;
  Distribution dist_;
  double p_;
  std::optional<Smoothing> smoothing_;
};

/// One draw; the support of the result is exactly model.support(). Stream
/// `stream` of `seed` is used, so trial i of an experiment passes i.
SparsePolynomial sample(const RandomModel& model, std::uint64_t seed, std::uint64_t stream = 0);

struct ModelConstants {
  double K = 0.0;    ///< sum of subgaussian constants
  double rho = 0.0;  ///< geometric mean of the anti-concentration constants of 1, X_1..X_n
  double L = 0.0;    ///< sum of p-tail constants
};

/// Per-coefficient constants of a distribution: smallest K with
/// P(|x| > t) <= 2 exp(-t^2 / K^2) for t >= K, its density bound, and the
/// same tail constant for exponent p. Bounded laws use K = L = max |support|.
/// Unbounded laws are searched numerically; K is +infinity when the tail is
/// heavier than Gaussian.
ModelConstants coefficient_constants(const Distribution& dist, double p);

ModelConstants model_constants(const RandomModel& model);

struct ModelShape {
  std::size_t n = 1;
  int d = 1;
  std::size_t support_size = 1;
};

ModelShape model_shape(const RandomModel& model);

/// Rejects sigma <= 0 and centres not supported within base.support().
RandomModel smoothed_model(const SparsePolynomial& f0, double sigma, const RandomModel& base);

// Closed-form bounds. Each takes the model, or its shape and constants
// directly; none of them looks at sampled data.

/// sqrt(n) d^n |M| (8 K rho / sqrt(n+1))^{n+1} ln^{(n+1)/2}(t) / t^{n+1},
/// unclamped. Rejects t < e.
double tail_bound_local_raw(const ModelShape& s, const ModelConstants& c, double t);
/// The same, clamped to [0, 1].
double tail_bound_local(const RandomModel& model, double t);

/// sqrt(n) d^n |M| (8 L rho / (n+1)^{1-1/p})^{n+1} ln^{(n+1)/p}(t) / t^{n+1},
/// unclamped. Rejects t < e and p < 1.
double tail_bound_local_p_raw(const ModelShape& s, const ModelConstants& c, double p, double t);
double tail_bound_local_p(const RandomModel& model, double t);

struct GlobalTailBound {
  double sharp = 0.0;       ///< 2 sqrt(n) d^{2n} |M| (16 K rho / sqrt(n+1))^{n+1} ln^{(n+1)/2}(t) / t
  double simplified = 0.0;  ///< 2 sqrt(n) d^{2n} |M| (10 K rho)^{n+1} / sqrt(t)
};

/// Rejects t <= 2e.
GlobalTailBound tail_bound_global(const ModelShape& s, const ModelConstants& c, double t);
GlobalTailBound tail_bound_global(const RandomModel& model, double t);

struct BoxCountBound {
  double general = 0.0;  ///< 2 n^{3/2} d^{2n} |M| (20 (n+1) K rho)^{n+1}
  /// Gaussian: 2 n^{3/2} (10(n+1))^{n+1} d^{2n} |M|^{n+2};
  /// uniform: 2 n 32^{n+1} d^{2n} |M|^{n+2}.
  std::optional<double> specialized;

  double best() const;
};

double expected_boxes_general(const ModelShape& s, const ModelConstants& c);
double expected_boxes_gaussian(const ModelShape& s);
double expected_boxes_uniform(const ModelShape& s);
BoxCountBound expected_boxes_bound(const RandomModel& model);

/// 2 n^2 d^n |M| (7 sqrt(n+1) K rho)^{n+1}, a bound on E_f E_x kappa(f, x)^n.
double moment_bound_kappa_n(const ModelShape& s, const ModelConstants& c);
double moment_bound_kappa_n(const RandomModel& model);

/// Tail-exponent version:
/// 2 n^2 (n+1)^{1/p-1/2} d^n |M| (8 e^{1-1/p} p^{-1/p} n^{1/p-1/2} (n+1)^{1/p} L rho)^{n+1}.
double moment_bound_kappa_n_p(const ModelShape& s, const ModelConstants& c, double p);
double moment_bound_kappa_n_p(const RandomModel& model);

/// (16 k |M| (log2 d + |log2(L rho)| + 1))^k, bounding the k-th moment of
/// the Descartes tree size. Rejects k < 1.
double descartes_moment_bound(const ModelShape& s, const ModelConstants& c, int k);
double descartes_moment_bound(const RandomModel& model, int k);

}  // namespace cubecond

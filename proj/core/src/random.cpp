#include "cubecond/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <tuple>
#include <stdexcept>
#include <string>

namespace cubecond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log of the upper standard normal tail Q(z).
double log_normal_tail(double z) {
  if (z < 25.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double log_add(double x, double y) {
  if (x < y) std::swap(x, y);
  if (y == -kInf) return x;
  return x + std::log1p(std::exp(y - x));
}

// Tail exponent q of the law: P(|x| > t) decays like exp(-c t^q).
double tail_exponent(const Distribution& dist) {
  switch (dist.kind) {
    case DistributionKind::Gaussian:
      return 2.0;
    case DistributionKind::Uniform:
      return kInf;
    case DistributionKind::WeibullSymmetric:
      return dist.a;
  }
  return 0.0;
}

double typical_scale(const Distribution& dist) {
  switch (dist.kind) {
    case DistributionKind::Gaussian:
      return std::abs(dist.a) + dist.b;
    case DistributionKind::Uniform:
      return std::max(std::abs(dist.a), std::abs(dist.b));
    case DistributionKind::WeibullSymmetric:
      return dist.b;
  }
  return 1.0;
}

// Whether P(|x| > t) <= 2 exp(-(t/L)^p) on a geometric grid of t in [L, t_max].
bool tail_holds(const Distribution& dist, double p, double L, double t_max) {
  const double log2 = std::numbers::ln2;
  for (double t = L; t <= t_max; t *= 1.0005) {
    if (dist.log_survival(t) > log2 - std::pow(t / L, p)) return false;
  }
  return true;
}

// Smallest L with P(|x| > t) <= 2 exp(-(t/L)^p) for all t >= L.
double tail_constant(const Distribution& dist, double p) {
  if (dist.kind == DistributionKind::Uniform) return typical_scale(dist);
  if (tail_exponent(dist) < p) return kInf;
  const double scale = typical_scale(dist);
  const double t_max = 1e4 * scale;
  double hi = scale;
  while (!tail_holds(dist, p, hi, t_max)) {
    hi *= 2.0;
    if (hi > 1e6 * scale) return kInf;
  }
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_holds(dist, p, mid, t_max)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void check_shape(const ModelShape& s) {
  if (s.n < 1 || s.d < 1 || s.support_size < 1) {
    throw std::invalid_argument("bound: model shape must be positive");
  }
}

void check_t(double t) {
  if (!(t >= std::numbers::e)) throw std::invalid_argument("tail bound: t must be >= e");
}

}  // namespace

Distribution Distribution::gaussian(double mean, double sd) {
  if (!(sd > 0.0) || !std::isfinite(mean) || !std::isfinite(sd)) {
    throw std::invalid_argument("gaussian: sd must be positive and finite");
  }
  return {DistributionKind::Gaussian, mean, sd};
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("uniform: need finite lo < hi");
  }
  return {DistributionKind::Uniform, lo, hi};
}

Distribution Distribution::weibull_symmetric(double p, double scale) {
  if (!(p >= 1.0) || !std::isfinite(p) || !(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("weibull_symmetric: need p >= 1 and scale > 0");
  }
  return {DistributionKind::WeibullSymmetric, p, scale};
}

double Distribution::sample(RandomStream& rng) const {
  switch (kind) {
    case DistributionKind::Gaussian:
      return a + b * rng.normal();
    case DistributionKind::Uniform:
      return rng.uniform(a, b);
    case DistributionKind::WeibullSymmetric: {
      const double magnitude = b * std::pow(-std::log(rng.uniform01()), 1.0 / a);
      return rng.coin() ? magnitude : -magnitude;
    }
  }
  return 0.0;
}

double Distribution::log_survival(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind) {
    case DistributionKind::Gaussian:
      return log_add(log_normal_tail((t - a) / b), log_normal_tail((t + a) / b));
    case DistributionKind::Uniform: {
      const double mass = std::max(0.0, b - std::max(a, t)) + std::max(0.0, std::min(b, -t) - a);
      return std::log(mass / (b - a));
    }
    case DistributionKind::WeibullSymmetric:
      return -std::pow(t / b, a);
  }
  return 0.0;
}

double Distribution::density_max() const {
  switch (kind) {
    case DistributionKind::Gaussian:
      return 1.0 / (b * std::sqrt(2.0 * std::numbers::pi));
    case DistributionKind::Uniform:
      return 1.0 / (b - a);
    case DistributionKind::WeibullSymmetric: {
      if (a == 1.0) return 1.0 / (2.0 * b);
      const double q = (a - 1.0) / a;
      return a / (2.0 * b) * std::pow(q, q) * std::exp(-q);
    }
  }
  return 0.0;
}

ModelConstants coefficient_constants(const Distribution& dist, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("coefficient_constants: p must be >= 1");
  // The tail searches cost a few milliseconds; bounds are evaluated often.
  using Key = std::tuple<int, double, double, double>;
  static std::mutex mutex;
  static std::map<Key, ModelConstants> cache;
  const Key key{static_cast<int>(dist.kind), dist.a, dist.b, p};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ModelConstants c;
  c.K = tail_constant(dist, 2.0);
  c.L = p == 2.0 ? c.K : tail_constant(dist, p);
  c.rho = dist.density_max();
  std::lock_guard lock(mutex);
  cache.emplace(key, c);
  return c;
}

RandomModel::RandomModel(std::size_t n, std::vector<Exponent> support, Distribution dist, double p)
    : n_(n), support_(std::move(support)), dist_(dist), p_(p) {
  if (n_ == 0) throw std::invalid_argument("RandomModel: n must be positive");
  if (!(p_ >= 1.0) || !std::isfinite(p_)) throw std::invalid_argument("RandomModel: p must be >= 1");
  std::set<Exponent> seen;
  for (const auto& alpha : support_) {
    if (alpha.size() != n_) throw std::invalid_argument("RandomModel: exponent length differs from n");
    if (!seen.insert(alpha).second) throw std::invalid_argument("RandomModel: duplicate exponent");
  }
  Exponent e(n_, 0);
  if (!seen.count(e)) throw std::invalid_argument("RandomModel: support must contain 0");
  for (std::size_t i = 0; i < n_; ++i) {
    e.assign(n_, 0);
    e[i] = 1;
    if (!seen.count(e)) {
      throw std::invalid_argument("RandomModel: support must contain e_" + std::to_string(i + 1));
    }
  }
  // Recompute through the public path so the invariants are checked once here.
  const ModelConstants c = model_constants(*this);
  const double np1 = static_cast<double>(n_ + 1);
  if (!(c.K * c.rho > np1 / 4.0) || !(c.L * c.rho > 9.0 * np1 / 50.0)) {
    throw std::logic_error("RandomModel: constants violate the K rho / L rho lower bounds");
  }
}

int RandomModel::degree() const {
  std::uint32_t d = 1;
  for (const auto& alpha : support_) {
    std::uint32_t s = 0;
    for (auto a : alpha) s += a;
    d = std::max(d, s);
  }
  return static_cast<int>(d);
}

bool RandomModel::is_plain_gaussian() const {
  return !smoothing_ && dist_.kind == DistributionKind::Gaussian && dist_.a == 0.0;
}

bool RandomModel::is_plain_uniform() const {
  return !smoothing_ && dist_.kind == DistributionKind::Uniform && dist_.a == -dist_.b;
}

SparsePolynomial sample(const RandomModel& model, std::uint64_t seed, std::uint64_t stream) {
  RandomStream rng(seed, stream);
  std::vector<Term> terms;
  terms.reserve(model.support_size());
  const auto& sm = model.smoothing();
  const double spread = sm ? sm->sigma * sm->center.norm1() : 1.0;
  for (const auto& alpha : model.support()) {
    double c = model.distribution().sample(rng);
    if (sm) c = sm->center.coefficient(alpha) + spread * c;
    terms.push_back({alpha, c});
  }
  return SparsePolynomial(model.dimension(), std::move(terms));
}

ModelConstants model_constants(const RandomModel& model) {
  const ModelConstants per = coefficient_constants(model.distribution(), model.p());
  const double m = static_cast<double>(model.support_size());
  ModelConstants c{m * per.K, per.rho, m * per.L};
  if (const auto& sm = model.smoothing()) {
    const double norm = sm->center.norm1();
    c.K = norm * (1.0 + sm->sigma * c.K);
    c.L = norm * (1.0 + sm->sigma * c.L);
    c.rho = c.rho / (sm->sigma * norm);
  }
  return c;
}

ModelShape model_shape(const RandomModel& model) {
  return {model.dimension(), model.degree(), model.support_size()};
}

RandomModel smoothed_model(const SparsePolynomial& f0, double sigma, const RandomModel& base) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("smoothed_model: sigma must be positive");
  }
  if (base.smoothing()) throw std::invalid_argument("smoothed_model: base is already smoothed");
  if (f0.dimension() != base.dimension()) {
    throw std::invalid_argument("smoothed_model: dimension mismatch");
  }
  if (f0.is_zero()) throw std::invalid_argument("smoothed_model: zero centre");
  const std::set<Exponent> allowed(base.support().begin(), base.support().end());
  for (const auto& t : f0.terms()) {
    if (t.coeff != 0.0 && !allowed.count(t.alpha)) {
      throw std::invalid_argument("smoothed_model: centre not supported within the model support");
    }
  }
  RandomModel out = base;
  out.smoothing_ = Smoothing{sigma, f0};
  return out;
}

double tail_bound_local_raw(const ModelShape& s, const ModelConstants& c, double t) {
  check_shape(s);
  check_t(t);
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  return std::sqrt(n) * std::pow(s.d, n) * m * std::pow(8.0 * c.K * c.rho / std::sqrt(n + 1.0), n + 1.0) *
         std::pow(std::log(t), (n + 1.0) / 2.0) / std::pow(t, n + 1.0);
}

double tail_bound_local(const RandomModel& model, double t) {
  return std::clamp(tail_bound_local_raw(model_shape(model), model_constants(model), t), 0.0, 1.0);
}

double tail_bound_local_p_raw(const ModelShape& s, const ModelConstants& c, double p, double t) {
  check_shape(s);
  check_t(t);
  if (!(p >= 1.0)) throw std::invalid_argument("tail_bound_local_p: p must be >= 1");
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  const double inner = 8.0 * c.L * c.rho / std::pow(n + 1.0, 1.0 - 1.0 / p);
  return std::sqrt(n) * std::pow(s.d, n) * m * std::pow(inner, n + 1.0) *
         std::pow(std::log(t), (n + 1.0) / p) / std::pow(t, n + 1.0);
}

double tail_bound_local_p(const RandomModel& model, double t) {
  return std::clamp(
      tail_bound_local_p_raw(model_shape(model), model_constants(model), model.p(), t), 0.0, 1.0);
}

GlobalTailBound tail_bound_global(const ModelShape& s, const ModelConstants& c, double t) {
  check_shape(s);
  if (!(t > 2.0 * std::numbers::e)) throw std::invalid_argument("tail_bound_global: t must exceed 2e");
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  const double front = 2.0 * std::sqrt(n) * std::pow(s.d, 2.0 * n) * m;
  const double kr = c.K * c.rho;
  GlobalTailBound b;
  b.sharp = front * std::pow(16.0 * kr / std::sqrt(n + 1.0), n + 1.0) *
            std::pow(std::log(t), (n + 1.0) / 2.0) / t;
  b.simplified = front * std::pow(10.0 * kr, n + 1.0) / std::sqrt(t);
  if (b.sharp > b.simplified) throw std::logic_error("tail_bound_global: sharp form above simplified form");
  return b;
}

GlobalTailBound tail_bound_global(const RandomModel& model, double t) {
  return tail_bound_global(model_shape(model), model_constants(model), t);
}

double BoxCountBound::best() const {
  return specialized ? std::min(general, *specialized) : general;
}

double expected_boxes_general(const ModelShape& s, const ModelConstants& c) {
  check_shape(s);
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  return 2.0 * std::pow(n, 1.5) * std::pow(s.d, 2.0 * n) * m *
         std::pow(20.0 * (n + 1.0) * c.K * c.rho, n + 1.0);
}

double expected_boxes_gaussian(const ModelShape& s) {
  check_shape(s);
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  return 2.0 * std::pow(n, 1.5) * std::pow(10.0 * (n + 1.0), n + 1.0) * std::pow(s.d, 2.0 * n) *
         std::pow(m, n + 2.0);
}

double expected_boxes_uniform(const ModelShape& s) {
  check_shape(s);
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  return 2.0 * n * std::pow(32.0, n + 1.0) * std::pow(s.d, 2.0 * n) * std::pow(m, n + 2.0);
}

BoxCountBound expected_boxes_bound(const RandomModel& model) {
  const ModelShape s = model_shape(model);
  BoxCountBound b;
  b.general = expected_boxes_general(s, model_constants(model));
  if (model.is_plain_gaussian()) b.specialized = expected_boxes_gaussian(s);
  if (model.is_plain_uniform()) b.specialized = expected_boxes_uniform(s);
  return b;
}

double moment_bound_kappa_n(const ModelShape& s, const ModelConstants& c) {
  check_shape(s);
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  return 2.0 * n * n * std::pow(s.d, n) * m *
         std::pow(7.0 * std::sqrt(n + 1.0) * c.K * c.rho, n + 1.0);
}

double moment_bound_kappa_n(const RandomModel& model) {
  return moment_bound_kappa_n(model_shape(model), model_constants(model));
}

double moment_bound_kappa_n_p(const ModelShape& s, const ModelConstants& c, double p) {
  check_shape(s);
  if (!(p >= 1.0)) throw std::invalid_argument("moment_bound_kappa_n_p: p must be >= 1");
  const double n = static_cast<double>(s.n);
  const double m = static_cast<double>(s.support_size);
  const double ip = 1.0 / p;
  const double inner = 8.0 * std::exp(1.0 - ip) / std::pow(p, ip) * std::pow(n, ip - 0.5) *
                       std::pow(n + 1.0, ip) * c.L * c.rho;
  return 2.0 * n * n * std::pow(n + 1.0, ip - 0.5) * std::pow(s.d, n) * m * std::pow(inner, n + 1.0);
}

double moment_bound_kappa_n_p(const RandomModel& model) {
  return moment_bound_kappa_n_p(model_shape(model), model_constants(model), model.p());
}

double descartes_moment_bound(const ModelShape& s, const ModelConstants& c, int k) {
  check_shape(s);
  if (k < 1) throw std::invalid_argument("descartes_moment_bound: k must be >= 1");
  const double m = static_cast<double>(s.support_size);
  const double base = 16.0 * k * m *
                      (std::log2(static_cast<double>(s.d)) + std::abs(std::log2(c.L * c.rho)) + 1.0);
  return std::pow(base, k);
}

double descartes_moment_bound(const RandomModel& model, int k) {
  return descartes_moment_bound(model_shape(model), model_constants(model), k);
}

}  // namespace cubecond

#include "cubecond/interval.hpp"

#include <cmath>
#include <stdexcept>

namespace cubecond {

int Box::depth() const {
  // width = 2^(1 - depth) exactly for boxes produced by subdivision
  return 1 - std::ilogb(width);
}

double Box::volume() const { return std::pow(width, static_cast<double>(dimension())); }

bool Box::contains(std::span<const double> x) const {
  if (x.size() != midpoint.size()) return false;
  const double r = 0.5 * width;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - midpoint[i]) > r) return false;
  }
  return true;
}

Interval interval_f(const SparsePolynomial& f, const Box& box) {
  const double center = f.evaluate(box.midpoint);
  const double radius = f.degree() * f.norm1() * box.width / 2.0;
  return {center - radius, center + radius};
}

Interval interval_grad_norm(const SparsePolynomial& f, const Box& box) {
  const double center = f.gradient(box.midpoint).norm1();
  const double d = f.degree();
  const double n = static_cast<double>(f.dimension());
  const double radius = std::sqrt(2.0 * n) * d * d * f.norm1() * box.width / 2.0;
  return {std::max(0.0, center - radius), center + radius};
}

PredicateClause classify_box(const SparsePolynomial& f, const Box& box) {
  const double d = f.degree();
  const double n = static_cast<double>(f.dimension());
  const double half_width_norm = f.norm1() * box.width / 2.0;
  if (std::abs(f.evaluate(box.midpoint)) > d * half_width_norm) return PredicateClause::Sign;
  if (f.gradient(box.midpoint).norm1() > d * d * std::sqrt(2.0 * n) * half_width_norm) {
    return PredicateClause::Gradient;
  }
  return PredicateClause::None;
}

bool predicate_Cf_box(const SparsePolynomial& f, const Box& box) {
  return classify_box(f, box) != PredicateClause::None;
}

std::vector<Box> standard_subdivision(const Box& box) {
  const std::size_t n = box.dimension();
  if (n >= 20) throw std::invalid_argument("standard_subdivision: dimension too large");
  const double half = box.width / 2.0;
  const double quarter = box.width / 4.0;
  const std::size_t count = std::size_t{1} << n;
  std::vector<Box> children;
  children.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    Box child{box.midpoint, half};
    for (std::size_t i = 0; i < n; ++i) {
      const bool upper = (code >> (n - 1 - i)) & 1u;
      child.midpoint[i] += upper ? quarter : -quarter;
    }
    children.push_back(std::move(child));
  }
  return children;
}

}  // namespace cubecond

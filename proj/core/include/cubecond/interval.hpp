#pragma once

#include <cstdint>
#include <vector>

#include "cubecond/poly.hpp"

namespace cubecond {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double center() const { return 0.5 * (lo + hi); }
  double radius() const { return 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Axis-aligned cube m + (w/2) [-1, 1]^n.
struct Box {
  Point midpoint;
  double width = 2.0;

  static Box unit_cube(std::size_t n) { return Box{Point(n, 0.0), 2.0}; }

  std::size_t dimension() const { return midpoint.size(); }
  /// Number of halvings from the unit cube (width 2 * 2^-depth).
  int depth() const;
  double volume() const;
  bool contains(std::span<const double> x) const;

  friend bool operator==(const Box&, const Box&) = default;
};

/// f(m(B)) + d |f|_1 (w(B)/2) [-1, 1].
Interval interval_f(const SparsePolynomial& f, const Box& box);

/// |d_{m(B)} f|_1 + sqrt(2n) d^2 |f|_1 (w(B)/2) [-1, 1], clamped below at 0.
Interval interval_grad_norm(const SparsePolynomial& f, const Box& box);

/// Which clause of the box predicate holds, if any.
enum class PredicateClause : std::uint8_t { None, Sign, Gradient };

/// Evaluates both strict inequalities of the interval predicate; the sign
/// clause is checked first.
PredicateClause classify_box(const SparsePolynomial& f, const Box& box);

/// True iff 0 is outside the sign enclosure or strictly outside the gradient
/// norm enclosure: |f(m)| > d|f|_1 w/2 or |d_m f|_1 > d^2 sqrt(2n) |f|_1 w/2.
bool predicate_Cf_box(const SparsePolynomial& f, const Box& box);

/// The 2^n children, coordinate 0 varying slowest and the lower half first.
std::vector<Box> standard_subdivision(const Box& box);

}  // namespace cubecond

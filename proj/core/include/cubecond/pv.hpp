#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cubecond/interval.hpp"
#include "cubecond/poly.hpp"

namespace cubecond {

struct SubdivisionReport {
  std::vector<Box> final_boxes;
  std::vector<PredicateClause> clauses;  ///< clause that accepted each final box
  std::size_t processed_count = 0;
  int max_depth_reached = 0;
  std::vector<std::size_t> per_depth_counts;  ///< processed boxes per depth
  bool terminated = true;
  std::size_t pending_count = 0;  ///< unresolved boxes when a guard fired

  double total_volume() const;
};

struct PvOptions {
  int max_depth = 30;
  /// Guard on the size of a single level of the worklist.
  std::size_t max_level_boxes = std::size_t{1} << 22;
  /// Predicate evaluations per level are split across this many threads.
  /// The report does not depend on it.
  unsigned workers = 1;
};

/// Interval-level subdivision of I^n: boxes failing the predicate are split
/// into their 2^n children, breadth first. A box at max_depth that still
/// fails stops the run with terminated = false.
SubdivisionReport pv_subdivide(const SparsePolynomial& f, const PvOptions& options);
SubdivisionReport pv_subdivide(const SparsePolynomial& f, int max_depth);

/// Sampling check of the exact box condition on every final box: f keeps a
/// strict sign on the samples, or every pair of sampled gradients has a
/// positive dot product. Samples are the corners, the midpoint and
/// pseudo-random interior points. Rejects non-terminated reports.
bool verify_output_boxes(const SparsePolynomial& f, const SubdivisionReport& report,
                         int samples_per_box, std::uint64_t seed = 0);

struct AmortizationEstimate {
  double mean = 0.0;  ///< Monte Carlo value of 4^n E[(d sqrt(2n) kappa(f, x))^n]
  double std_error = 0.0;

  double upper(double sigmas = 3.0) const { return mean + sigmas * std_error; }
};

/// Estimates 4^n E_{x in I^n}[1 / b_f(x)] with b_f the condition-based local
/// size bound, from n_samples uniform points.
AmortizationEstimate amortization_bound(const SparsePolynomial& f, std::size_t n_samples,
                                        std::uint64_t seed);

/// SVG picture of a planar subdivision; boxes accepted by the sign clause and
/// by the gradient clause get different fills. Rejects n != 2.
std::string subdivision_svg(const SubdivisionReport& report);

}  // namespace cubecond

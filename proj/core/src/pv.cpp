#include "cubecond/pv.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cubecond/condition.hpp"
#include "cubecond/rng.hpp"
#include "parallel.hpp"

namespace cubecond {

double SubdivisionReport::total_volume() const {
  double v = 0.0;
  for (const auto& b : final_boxes) v += b.volume();
  return v;
}

SubdivisionReport pv_subdivide(const SparsePolynomial& f, int max_depth) {
  PvOptions options;
  options.max_depth = max_depth;
  return pv_subdivide(f, options);
}

SubdivisionReport pv_subdivide(const SparsePolynomial& f, const PvOptions& options) {
  if (f.norm1() == 0.0) throw std::invalid_argument("pv_subdivide: zero polynomial");
  if (options.max_depth < 1 || options.max_depth > 50) {
    throw std::invalid_argument("pv_subdivide: max_depth must lie in [1, 50]");
  }
  SubdivisionReport report;
  std::vector<Box> level{Box::unit_cube(f.dimension())};
  std::vector<PredicateClause> verdicts;

  for (int depth = 0; !level.empty(); ++depth) {
    verdicts.assign(level.size(), PredicateClause::None);
    detail::parallel_for(level.size(), options.workers,
                         [&](std::size_t i) { verdicts[i] = classify_box(f, level[i]); });

    report.processed_count += level.size();
    report.per_depth_counts.push_back(level.size());
    report.max_depth_reached = depth;

    std::vector<Box> next;
    std::size_t unresolved = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (verdicts[i] != PredicateClause::None) {
        report.final_boxes.push_back(std::move(level[i]));
        report.clauses.push_back(verdicts[i]);
      } else if (depth >= options.max_depth) {
        ++unresolved;
      } else {
        for (auto& child : standard_subdivision(level[i])) next.push_back(std::move(child));
      }
    }
    if (unresolved > 0 || next.size() > options.max_level_boxes) {
      report.terminated = false;
      report.pending_count = unresolved + next.size();
      break;
    }
    level = std::move(next);
  }
  return report;
}

namespace {

std::vector<Point> box_samples(const Box& box, int random_samples, RandomStream& rng) {
  const std::size_t n = box.dimension();
  const double r = box.width / 2.0;
  std::vector<Point> pts;
  for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
    Point p = box.midpoint;
    for (std::size_t i = 0; i < n; ++i) p[i] += ((code >> i) & 1u) ? r : -r;
    pts.push_back(std::move(p));
  }
  pts.push_back(box.midpoint);
  for (int s = 0; s < random_samples; ++s) {
    Point p = box.midpoint;
    for (std::size_t i = 0; i < n; ++i) p[i] += rng.uniform(-r, r);
    pts.push_back(std::move(p));
  }
  return pts;
}

bool strict_sign(const SparsePolynomial& f, const std::vector<Point>& pts) {
  bool pos = false;
  bool neg = false;
  for (const auto& p : pts) {
    const double v = f.evaluate(p);
    if (v > 0.0) {
      pos = true;
    } else if (v < 0.0) {
      neg = true;
    } else {
      return false;
    }
    if (pos && neg) return false;
  }
  return true;
}

bool aligned_gradients(const SparsePolynomial& f, const std::vector<Point>& pts) {
  std::vector<Covector> grads;
  grads.reserve(pts.size());
  for (const auto& p : pts) grads.push_back(f.gradient(p));
  for (std::size_t i = 0; i < grads.size(); ++i) {
    for (std::size_t j = i; j < grads.size(); ++j) {
      if (!(grads[i].dot(grads[j]) > 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

bool verify_output_boxes(const SparsePolynomial& f, const SubdivisionReport& report,
                         int samples_per_box, std::uint64_t seed) {
  if (!report.terminated) {
    throw std::invalid_argument("verify_output_boxes: report did not terminate");
  }
  RandomStream rng(seed, 0);
  for (const auto& box : report.final_boxes) {
    const auto pts = box_samples(box, samples_per_box, rng);
    if (!strict_sign(f, pts) && !aligned_gradients(f, pts)) return false;
  }
  return true;
}

AmortizationEstimate amortization_bound(const SparsePolynomial& f, std::size_t n_samples,
                                        std::uint64_t seed) {
  if (f.norm1() == 0.0) throw std::invalid_argument("amortization_bound: zero polynomial");
  if (n_samples < 2) throw std::invalid_argument("amortization_bound: need at least 2 samples");
  const std::size_t n = f.dimension();
  const double dn = static_cast<double>(n);
  const double scale = f.degree() * std::sqrt(2.0 * dn);
  RandomStream rng(seed, 0);

  // Welford accumulation of (d sqrt(2n) kappa)^n.
  double mean = 0.0;
  double m2 = 0.0;
  Point x(n);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (auto& xi : x) xi = rng.uniform(-1.0, 1.0);
    const double value = std::pow(scale * local_condition(f, x), dn);
    const double delta = value - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (value - mean);
  }
  const double factor = std::pow(4.0, dn);
  AmortizationEstimate est;
  est.mean = factor * mean;
  if (std::isfinite(mean)) {
    const double var = m2 / static_cast<double>(n_samples - 1);
    est.std_error = factor * std::sqrt(var / static_cast<double>(n_samples));
  } else {
    est.std_error = std::numeric_limits<double>::infinity();
  }
  return est;
}

std::string subdivision_svg(const SubdivisionReport& report) {
  constexpr double kSize = 512.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" "
         "viewBox=\"0 0 512 512\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"#ffffff\"/>\n";
  char buf[256];
  for (std::size_t i = 0; i < report.final_boxes.size(); ++i) {
    const Box& b = report.final_boxes[i];
    if (b.dimension() != 2) throw std::invalid_argument("subdivision_svg: boxes must be planar");
    const double x0 = (b.midpoint[0] - b.width / 2.0 + 1.0) * kSize / 2.0;
    const double y0 = (1.0 - (b.midpoint[1] + b.width / 2.0)) * kSize / 2.0;
    const double side = b.width * kSize / 2.0;
    const char* fill = report.clauses[i] == PredicateClause::Sign ? "#8ecae6" : "#ffb703";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.6f\" y=\"%.6f\" width=\"%.6f\" height=\"%.6f\" fill=\"%s\" "
                  "stroke=\"#023047\" stroke-width=\"0.5\"/>\n",
                  x0, y0, side, side, fill);
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cubecond

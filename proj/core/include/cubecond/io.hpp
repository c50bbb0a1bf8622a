#pragma once

#include <stdexcept>
#include <string>

#include "cubecond/experiments.hpp"
#include "cubecond/poly.hpp"
#include "cubecond/random.hpp"

namespace cubecond {

/// Malformed input document; field() names the offending entry, e.g.
/// "terms[1].alpha".
class InputError : public std::invalid_argument {
 public:
  InputError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// {"n": 2, "terms": [{"alpha": [1, 0], "c": 1.0}, ...]}
SparsePolynomial parse_polynomial(const std::string& json);
/// Same schema; indent < 0 gives a single line.
std::string polynomial_to_json(const SparsePolynomial& f, int indent = -1);

/// {"n": 1, "support": [[0], [1], [5]], "dist": {"kind": "gaussian", "sd": 1.0}, "p": 2}
/// with kinds gaussian (mean, sd), uniform (lo, hi), weibull (p, scale) and
/// an optional "smoothed": {"sigma": s, "center": <polynomial>}.
RandomModel parse_model(const std::string& json);

/// A model document plus "experiment": tail | pv | descartes | separation
/// and the optional knobs trials, seed, t_grid, k_list, max_depth, grid_eps,
/// eps, point, workers.
ExperimentConfig parse_experiment_config(const std::string& json);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace cubecond

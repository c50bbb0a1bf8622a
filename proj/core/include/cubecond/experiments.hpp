#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubecond/poly.hpp"
#include "cubecond/pv.hpp"
#include "cubecond/random.hpp"

namespace cubecond {

enum class ExperimentKind { Tail, Pv, Descartes, Separation };

const char* experiment_name(ExperimentKind kind);
/// Inverse of experiment_name; throws std::invalid_argument.
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentConfig {
  ExperimentConfig(ExperimentKind kind, RandomModel model);

  ExperimentKind kind;
  RandomModel model;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<double> t_grid;  ///< tail; defaults to {e, 10, 100}
  std::vector<int> k_list;     ///< descartes; defaults to {1, 2}
  int max_depth = 0;           ///< pv and descartes; 0 picks 20 resp. 60
  double grid_eps = 1e-3;      ///< separation: starting grid of the kappa enclosure
  double eps = 1e-3;           ///< separation: cap on the neighbourhood radius
  Point point;                 ///< tail; defaults to the origin
  unsigned workers = 1;

  /// Throws std::invalid_argument when the knobs do not fit the experiment.
  void validate() const;
};

/// One CSV row. Unset bound or pass leave the column empty.
struct ReportRow {
  std::string trial;  ///< trial index, "all" for aggregates, "sidebar" for side notes
  std::uint64_t seed = 0;
  std::string stat;
  double value = 0.0;
  std::optional<double> bound;
  std::optional<bool> pass;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::Tail;
  std::vector<ReportRow> rows;
  std::size_t trials = 0;
  std::size_t excluded = 0;  ///< non-terminating draws or oracle failures
  std::size_t violations = 0;
  bool passed = false;
  bool inconclusive = false;
  double wall_seconds = 0.0;  ///< kept out of the CSV

  bool ok() const { return passed && !inconclusive; }
};

/// Empirical survival of kappa(f, x) at cfg.point against the local tail
/// bound; passes when P - 3 SE <= bound for every t.
ExperimentReport run_tail_experiment(const ExperimentConfig& cfg);

/// Mean final box count of the subdivision against the expected-box bound;
/// passes when mean + 3 SE <= bound. More than 10% non-terminating draws
/// make the report inconclusive.
ExperimentReport run_pv_experiment(const ExperimentConfig& cfg);

/// Moments of the Descartes tree size against descartes_moment_bound, one
/// verdict per k. Adds a deterministic Mignotte-type instance as a sidebar.
ExperimentReport run_descartes_experiment(const ExperimentConfig& cfg);

/// Counts draws whose oracle separations fall below the condition-based
/// lower bounds; passes with zero violations. Oracle failures are excluded
/// and make the report inconclusive above 1% of the trials.
ExperimentReport run_separation_experiment(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Header `trial,seed,stat_name,value,bound,pass`, one line per row.
std::string report_csv(const ExperimentReport& report);

/// Write report_csv / subdivision_svg to path; throw std::runtime_error on
/// I/O failure.
void emit_csv(const ExperimentReport& report, const std::string& path);
void emit_svg(const SubdivisionReport& subdivision, const std::string& path);

}  // namespace cubecond

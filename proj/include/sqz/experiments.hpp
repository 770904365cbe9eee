#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqz/comparator.hpp"
#include "sqz/table.hpp"

namespace sqz {

/// Closed interval; lo == hi is a single point.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// "x" or "lo:hi". Throws ConfigError.
Range parse_range(const std::string& text);

/// lo, lo + step, ... up to hi (hi itself included when it lands on the grid).
std::vector<double> grid(const Range& range, double step);

struct ExperimentConfig {
  std::optional<int> n_max;  // adaptive per point when unset
  double tail_tol = 1e-6;
  std::vector<double> etas;  // empty: subcommand default
  std::optional<Range> delta_minus;
  std::optional<Range> delta_plus;
  std::optional<Range> r;
  std::optional<double> s;
  double grid_step = 0.05;
  double sweep_step = 0.2;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty: stdout
  int workers = 1;
};

/// Throws ConfigError describing the first invalid field.
void validate_config(const ExperimentConfig& cfg);

/// Cutoff used for an (r, s) point: the fixed n_max if configured, otherwise
/// the smallest one whose photon tail bound is below tail_tol / 2.
Truncation truncation_for(const ExperimentConfig& cfg, double r, double s);

/// Cutoff for the p_eta_same series at squeezing r (enough terms to reach its
/// 1e-14 stopping rule) unless n_max is fixed.
Truncation series_truncation_for(const ExperimentConfig& cfg, double r);

/// Columns: delta_minus, delta_plus, p_opt, p_universal, p_two_hypotheses,
/// sweep_points, sweep_max_dev. Ideal detectors only.
Table figure2(const ExperimentConfig& cfg);

/// Columns: r, eta, p_zero, p_diff.
Table figure3(const ExperimentConfig& cfg);

/// Columns: panel, delta_minus, delta_plus, eta, reliability, status. The
/// "vs_delta_minus" panel sweeps delta- at fixed delta+ and the
/// "vs_delta_plus" panel sweeps delta+ at fixed delta-. Degenerate points
/// carry status "degenerate" and an empty reliability.
Table figure4(const ExperimentConfig& cfg);

/// Every quantity at one (r, s) point for each eta.
Table probe(const ExperimentConfig& cfg);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  double value = 0.0;      // worst observed deviation or metric
  double threshold = 0.0;
  std::string detail;
};

/// The invariant suite: oracle agreements, Gaussian identity, closed forms,
/// no-error condition, Fock/Gaussian moments. Failures, including exceptions
/// such as TruncationTooSmall, are recorded rather than thrown.
std::vector<CheckOutcome> run_validation(const ExperimentConfig& cfg);

Table validation_table(const std::vector<CheckOutcome>& checks);

}  // namespace sqz

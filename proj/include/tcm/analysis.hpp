#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcm/closed_form.hpp"
#include "tcm/fock_field.hpp"

namespace tcm {

struct TimeRecord {
  double gt = 0.0;
  double W = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  double norm_deficit = 0.0;
};

struct OracleColumns {
  double W = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  double norm_deficit = 0.0;
};

enum class Channel { W, concurrence, eof };
Channel parse_channel(std::string_view text);

/// Sampled observables on a uniform, strictly increasing gt grid. `oracle` is
/// either empty or aligned with `records`.
struct TimeSeries {
  std::vector<TimeRecord> records;
  std::vector<OracleColumns> oracle;

  bool has_oracle() const noexcept { return !oracle.empty(); }
  std::size_t size() const noexcept { return records.size(); }
  std::vector<double> times() const;
  std::vector<double> channel(Channel c) const;
  /// Throws ConfigurationError on a non-increasing grid or out-of-range values.
  void validate() const;
};

/// gt_i = i * gt_max / (steps - 1), i = 0 .. steps - 1.
std::vector<double> uniform_grid(double gt_max, std::size_t steps);

struct Scenario {
  std::vector<FieldDistribution> fields;
  Convention convention = Convention::consistent;
  FormulaSet formulas = FormulaSet::automatic;
};

/// Closed-form W, C and E_F on the given grid. W is normalized by the traced
/// norm, so paper_literal series stay comparable with consistent ones.
TimeSeries simulate(const Scenario& scenario, std::span<const double> gts);

/// The same observables from exact evolution.
TimeSeries simulate_exact(const std::vector<FieldDistribution>& fields, std::span<const double> gts);

/// Single-atom Jaynes-Cummings inversion on the grid (C and E_F left at 0).
TimeSeries simulate_single_atom(const FieldDistribution& field, std::span<const double> gts);

// ---------------------------------------------------------------------------

enum class PeakChannel { W_envelope, C };

struct RevivalReport {
  std::vector<double> peak_times;
  std::vector<double> predicted;  // 2 j pi sqrt(mean), j = 1 .. max_j
  std::vector<double> relative_errors;  // aligned with peak_times
  std::size_t requested = 0;
  std::string note;  // set when fewer peaks than requested were found

  bool complete() const noexcept { return peak_times.size() >= requested; }
};

/// Envelope = |channel| smoothed by a centered moving average of width 1.0 in
/// gt. Peaks are interior local maxima of the envelope, chosen by height, at
/// least pi*sqrt(mean) apart from each other and from the start of the grid.
RevivalReport detect_revival_peaks(std::span<const double> gt, std::span<const double> values, std::size_t max_j,
                                   double mean);
RevivalReport detect_revival_peaks(const TimeSeries& series, PeakChannel channel, std::size_t max_j, double mean);

struct Interval {
  double start = 0.0;
  double end = 0.0;
  double length() const noexcept { return end - start; }
};

/// Maximal intervals where values < threshold spanning at least two grid steps.
std::vector<Interval> collapse_windows(std::span<const double> gt, std::span<const double> values, double threshold);
std::vector<Interval> collapse_windows(const TimeSeries& series, double threshold);

/// Zero crossings of (channel - its mean over the window) per unit gt.
double oscillation_rate(std::span<const double> gt, std::span<const double> values, Interval window);
double oscillation_rate(const TimeSeries& series, Channel channel, Interval window);

struct SweepRow {
  std::size_t modes = 1;
  double gt = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
};

/// Entanglement for every (m, gt) with m identical coherent modes of the given
/// mean. Rows sorted by (m, gt). m = 1 uses the single-mode formulas.
std::vector<SweepRow> mode_sweep(std::span<const double> gt_values, double mean, std::span<const std::size_t> modes,
                                 Convention convention, const WindowOptions& window = {});

struct DeviationSummary {
  std::size_t points = 0;
  double max_dW = 0.0, mean_dW = 0.0;
  double max_dC = 0.0, mean_dC = 0.0;
  double max_dE = 0.0, mean_dE = 0.0;
  double max_norm_deficit_closed = 0.0;
  double max_norm_deficit_exact = 0.0;

  std::string format() const;
};

/// Compares a closed-form series with an exact one on the same grid and
/// appends the exact columns to `closed`.
DeviationSummary deviation_report(TimeSeries& closed, const TimeSeries& exact);

}  // namespace tcm

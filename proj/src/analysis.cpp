#include "tcm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "tcm/entanglement.hpp"
#include "tcm/errors.hpp"
#include "tcm/inversion.hpp"
#include "tcm/oracle.hpp"
#include "tcm/reduced_density.hpp"

namespace tcm {

Channel parse_channel(std::string_view text) {
  if (text == "W") return Channel::W;
  if (text == "C" || text == "concurrence") return Channel::concurrence;
  if (text == "eof" || text == "E_F") return Channel::eof;
  throw ConfigurationError("unknown channel '" + std::string(text) + "' (expected W, concurrence or eof)");
}

std::vector<double> TimeSeries::times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.gt);
  return out;
}

std::vector<double> TimeSeries::channel(Channel c) const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back(c == Channel::W ? r.W : c == Channel::concurrence ? r.concurrence : r.eof);
  }
  return out;
}

void TimeSeries::validate() const {
  if (!oracle.empty() && oracle.size() != records.size()) {
    throw ConfigurationError("oracle columns are not aligned with the series");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (i > 0 && !(r.gt > records[i - 1].gt)) throw ConfigurationError("time grid is not strictly increasing");
    if (std::abs(r.W) > 1.0 + 1e-12) throw ConfigurationError("|W| exceeds 1");
    if (r.concurrence < 0.0 || r.concurrence > 1.0 || r.eof < 0.0 || r.eof > 1.0) {
      throw ConfigurationError("entanglement value outside [0, 1]");
    }
  }
}

std::vector<double> uniform_grid(double gt_max, std::size_t steps) {
  if (steps < 2) throw ConfigurationError("gt_steps must be >= 2");
  if (!(gt_max > 0.0) || !std::isfinite(gt_max)) throw ConfigurationError("gt_max must be finite and > 0");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = gt_max * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

namespace {

TimeRecord record_from(const TracedSums& sums) {
  const TwoAtomDensity rho = make_density(sums.rho);
  const auto point = entanglement_point(sums.gt, rho);
  const double norm = sums.norm();
  return {sums.gt, (sums.excited - sums.ground) / norm, point.concurrence, point.eof, 1.0 - norm};
}

TracedSums sums_from(double gt, std::span<const BranchAmplitudes> entries) {
  TracedSums sums;
  sums.gt = gt;
  for (const auto& e : entries) {
    const Eigen::Vector4cd v(e.aa, e.ab, e.ba, e.bb);
    sums.rho.noalias() += v * v.adjoint();
    sums.excited += std::norm(e.aa);
    sums.ground += std::norm(e.bb);
  }
  return sums;
}

}  // namespace

TimeSeries simulate(const Scenario& scenario, std::span<const double> gts) {
  const ClosedFormEvolution evolution(scenario.fields, scenario.convention, scenario.formulas);
  TimeSeries series;
  series.records.reserve(gts.size());
  for (const auto& sums : evolution.traced(gts)) series.records.push_back(record_from(sums));
  return series;
}

TimeSeries simulate_exact(const std::vector<FieldDistribution>& fields, std::span<const double> gts) {
  const ExactEvolution oracle(fields);
  TimeSeries series;
  series.records.reserve(gts.size());
  for (double gt : gts) {
    const OracleState state = oracle.evolve(gt);
    series.records.push_back(record_from(sums_from(gt, state.branch_amplitudes())));
  }
  return series;
}

TimeSeries simulate_single_atom(const FieldDistribution& field, std::span<const double> gts) {
  TimeSeries series;
  series.records.reserve(gts.size());
  for (double gt : gts) {
    series.records.push_back({gt, single_atom_jcm_inversion(field, gt).W, 0.0, 0.0, 1.0 - field.norm()});
  }
  return series;
}

// ---------------------------------------------------------------------------

namespace {

void check_aligned(std::span<const double> gt, std::span<const double> values) {
  if (gt.size() != values.size()) throw ConfigurationError("time and value columns differ in length");
  if (gt.size() < 2) throw ConfigurationError("series needs at least two points");
}

double grid_step(std::span<const double> gt) { return (gt.back() - gt.front()) / static_cast<double>(gt.size() - 1); }

std::vector<double> smoothed_envelope(std::span<const double> gt, std::span<const double> values) {
  const std::size_t n = values.size();
  const auto half = static_cast<std::size_t>(std::floor(0.5 / grid_step(gt) + 1e-9));
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::abs(values[i]);
  std::vector<double> envelope(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    envelope[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return envelope;
}

}  // namespace

RevivalReport detect_revival_peaks(std::span<const double> gt, std::span<const double> values, std::size_t max_j,
                                   double mean) {
  check_aligned(gt, values);
  if (max_j < 1) throw ConfigurationError("max_j must be >= 1");
  if (!(mean > 0.0)) throw ConfigurationError("revival detection needs a positive mean photon number");
  const double spacing = 2.0 * std::numbers::pi * std::sqrt(mean);
  const double required = static_cast<double>(max_j) * spacing * 1.2;
  if (gt.back() < required) {
    std::ostringstream msg;
    msg << "series ends at gt = " << gt.back() << " but revival detection up to j = " << max_j << " needs gt >= "
        << required;
    throw ConfigurationError(msg.str());
  }

  const auto envelope = smoothed_envelope(gt, values);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < envelope.size(); ++i) {
    if (envelope[i] >= envelope[i - 1] && envelope[i] > envelope[i + 1]) candidates.push_back(i);
  }
  std::ranges::stable_sort(candidates, [&](std::size_t a, std::size_t b) { return envelope[a] > envelope[b]; });

  const double separation = spacing / 2.0;
  std::vector<double> accepted;
  for (std::size_t i : candidates) {
    if (accepted.size() == max_j) break;
    const double t = gt[i];
    if (t - gt.front() < separation) continue;
    const bool isolated = std::ranges::all_of(accepted, [&](double a) { return std::abs(t - a) >= separation; });
    if (isolated) accepted.push_back(t);
  }
  std::ranges::sort(accepted);

  RevivalReport report;
  report.requested = max_j;
  for (std::size_t j = 1; j <= max_j; ++j) report.predicted.push_back(static_cast<double>(j) * spacing);
  report.peak_times = accepted;
  for (std::size_t j = 0; j < accepted.size(); ++j) {
    report.relative_errors.push_back(std::abs(accepted[j] - report.predicted[j]) / report.predicted[j]);
  }
  if (accepted.size() < max_j) {
    report.note = "found " + std::to_string(accepted.size()) + " of " + std::to_string(max_j) + " revival peaks";
  }
  return report;
}

RevivalReport detect_revival_peaks(const TimeSeries& series, PeakChannel channel, std::size_t max_j, double mean) {
  const auto gt = series.times();
  const auto values = series.channel(channel == PeakChannel::C ? Channel::concurrence : Channel::W);
  return detect_revival_peaks(gt, values, max_j, mean);
}

std::vector<Interval> collapse_windows(std::span<const double> gt, std::span<const double> values, double threshold) {
  check_aligned(gt, values);
  if (!(threshold > 0.0 && threshold <= 0.1)) throw ConfigurationError("collapse threshold must lie in (0, 0.1]");
  const double min_length = 2.0 * grid_step(gt) * (1.0 - 1e-9);
  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < values.size()) {
    if (!(values[i] < threshold)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] < threshold) ++j;
    const Interval interval{gt[i], gt[j]};
    if (interval.length() >= min_length) out.push_back(interval);
    i = j + 1;
  }
  return out;
}

std::vector<Interval> collapse_windows(const TimeSeries& series, double threshold) {
  return collapse_windows(series.times(), series.channel(Channel::concurrence), threshold);
}

double oscillation_rate(std::span<const double> gt, std::span<const double> values, Interval window) {
  check_aligned(gt, values);
  if (!(window.end > window.start)) throw ConfigurationError("oscillation window must have positive length");
  const double slack = 1e-9 * std::max(1.0, std::abs(gt.back()));
  if (window.start < gt.front() - slack || window.end > gt.back() + slack) {
    throw ConfigurationError("oscillation window lies outside the time grid");
  }
  std::vector<double> inside;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i] >= window.start - slack && gt[i] <= window.end + slack) inside.push_back(values[i]);
  }
  if (inside.size() < 2) return 0.0;
  const double mean = std::accumulate(inside.begin(), inside.end(), 0.0) / static_cast<double>(inside.size());

  std::size_t crossings = 0;
  int previous = 0;
  for (double v : inside) {
    const double d = v - mean;
    const int sign = d > 0.0 ? 1 : d < 0.0 ? -1 : 0;
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++crossings;
    previous = sign;
  }
  return static_cast<double>(crossings) / window.length();
}

double oscillation_rate(const TimeSeries& series, Channel channel, Interval window) {
  return oscillation_rate(series.times(), series.channel(channel), window);
}

std::vector<SweepRow> mode_sweep(std::span<const double> gt_values, double mean, std::span<const std::size_t> modes,
                                 Convention convention, const WindowOptions& window) {
  if (modes.empty()) throw ConfigurationError("mode sweep needs at least one mode count");
  if (gt_values.empty()) throw ConfigurationError("mode sweep needs at least one gt value");
  std::set<std::size_t> seen;
  for (auto m : modes) {
    if (m < 1) throw ConfigurationError("mode counts must be >= 1");
    if (!seen.insert(m).second) throw ConfigurationError("duplicate mode count " + std::to_string(m) + " in sweep");
  }
  std::vector<double> gts(gt_values.begin(), gt_values.end());
  std::ranges::sort(gts);

  std::vector<SweepRow> rows;
  const FieldDistribution field = FieldDistribution::coherent(mean, window);
  for (std::size_t m : seen) {
    const ClosedFormEvolution evolution(std::vector<FieldDistribution>(m, field), convention);
    for (const auto& sums : evolution.traced(gts)) {
      const TimeRecord r = record_from(sums);
      rows.push_back({m, r.gt, r.concurrence, r.eof});
    }
  }
  return rows;
}

DeviationSummary deviation_report(TimeSeries& closed, const TimeSeries& exact) {
  if (closed.size() != exact.size()) throw ConfigurationError("deviation report needs identical time grids");
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const double a = closed.records[i].gt;
    const double b = exact.records[i].gt;
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
      throw ConfigurationError("deviation report needs identical time grids");
    }
  }

  DeviationSummary s;
  s.points = closed.size();
  closed.oracle.clear();
  closed.oracle.reserve(closed.size());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const auto& c = closed.records[i];
    const auto& e = exact.records[i];
    closed.oracle.push_back({e.W, e.concurrence, e.eof, e.norm_deficit});
    const double dW = std::abs(c.W - e.W);
    const double dC = std::abs(c.concurrence - e.concurrence);
    const double dE = std::abs(c.eof - e.eof);
    s.max_dW = std::max(s.max_dW, dW);
    s.max_dC = std::max(s.max_dC, dC);
    s.max_dE = std::max(s.max_dE, dE);
    s.mean_dW += dW;
    s.mean_dC += dC;
    s.mean_dE += dE;
    s.max_norm_deficit_closed = std::max(s.max_norm_deficit_closed, std::abs(c.norm_deficit));
    s.max_norm_deficit_exact = std::max(s.max_norm_deficit_exact, std::abs(e.norm_deficit));
  }
  if (s.points > 0) {
    const auto n = static_cast<double>(s.points);
    s.mean_dW /= n;
    s.mean_dC /= n;
    s.mean_dE /= n;
  }
  return s;
}

std::string DeviationSummary::format() const {
  std::ostringstream out;
  out.precision(12);
  out << "points = " << points << "\n"
      << "max_abs_dW = " << max_dW << "\n"
      << "mean_abs_dW = " << mean_dW << "\n"
      << "max_abs_dC = " << max_dC << "\n"
      << "mean_abs_dC = " << mean_dC << "\n"
      << "max_abs_dE_F = " << max_dE << "\n"
      << "mean_abs_dE_F = " << mean_dE << "\n"
      << "max_norm_deficit_closed = " << max_norm_deficit_closed << "\n"
      << "max_norm_deficit_exact = " << max_norm_deficit_exact << "\n";
  return out.str();
}

}  // namespace tcm

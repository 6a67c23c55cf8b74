#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tcm/analysis.hpp"
#include "tcm/closed_form.hpp"
#include "tcm/fock_field.hpp"

namespace tcm::cli {

/// Run configuration shared by all subcommands. Settable from `key = value`
/// config files and from command-line flags (flags win).
struct RunConfig {
  std::size_t modes = 1;
  std::string field = "coherent";  // coherent | fock | custom
  std::vector<double> mean{5.0};   // one value for all modes, or one per mode
  std::vector<std::size_t> n0{0};
  std::string custom_file;
  double gt_max = 15.0;
  std::size_t gt_steps = 600;
  Convention convention = Convention::consistent;
  FormulaSet formulas = FormulaSet::automatic;
  bool oracle = false;
  double sigma_width = 6.0;
  double coverage_epsilon = 1e-12;
  std::string out;

  std::vector<double> sweep_gt{1.5, 2.25, 3.0};
  std::vector<std::size_t> sweep_modes{1, 2, 3, 4, 5, 6};
  double threshold = 0.02;
  std::size_t max_j = 2;

  std::size_t atoms = 2;                    // inversion: 1 or 2
  std::vector<double> diag_means{5.0, 20.0};  // diagnose: per-mode means compared with the oracle
  int p = 1;                                // diagnose: expansion order
  std::size_t diag_modes = 1;
  std::size_t diag_max_occupancy = 3;

  std::string input;          // analyze: CSV to read
  std::string column = "W";   // analyze: channel column
  std::vector<double> rate_window;  // analyze: optional [lo, hi]

  std::vector<std::string> warnings;

  void validate() const;
  std::vector<FieldDistribution> fields() const;
  double mode_mean(std::size_t k) const;
};

/// Recognised keys, in the order they are documented.
const std::vector<std::string>& config_keys();

/// Applies one `key = value` setting; throws ConfigurationError on an unknown
/// key or a malformed value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Formats with 12 significant digits; negative zero prints as 0.
std::string format_number(double value);

void write_timeseries_csv(std::ostream& out, const TimeSeries& series);
void write_inversion_csv(std::ostream& out, const TimeSeries& series);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
  bool has(const std::string& name) const;
};
CsvTable read_csv(const std::filesystem::path& path);

TimeSeries run_timeseries(const RunConfig& config);
TimeSeries run_inversion(const RunConfig& config);
std::vector<SweepRow> run_mode_sweep(const RunConfig& config);
std::string run_diagnostics(const RunConfig& config);
std::string run_analyze(const RunConfig& config);

/// Full command-line entry point; returns the process exit code
/// (0 success, 1 configuration error, 2 numerical failure).
int main(int argc, char** argv);

}  // namespace tcm::cli

#include "tcm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tcm/errors.hpp"
#include "tcm/oracle.hpp"

namespace tcm::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string text = trim(value);
  if (!text.empty() && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto s = trim(text);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(value)) {
    throw ConfigurationError("invalid number '" + text + "' for " + key);
  }
  return value;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const auto s = trim(text);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigurationError("invalid non-negative integer '" + text + "' for " + key);
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const auto s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigurationError("invalid boolean '" + text + "' for " + key);
}

std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<std::size_t> parse_counts(const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_count(key, item));
  return out;
}

FormulaSet parse_formulas(const std::string& text) {
  const auto s = trim(text);
  if (s == "auto") return FormulaSet::automatic;
  if (s == "single" || s == "single_mode") return FormulaSet::single_mode;
  if (s == "multimode") return FormulaSet::multimode;
  throw ConfigurationError("invalid formulas '" + text + "' (expected auto, single or multimode)");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"modes", [](RunConfig& c, const auto& k, const auto& v) { c.modes = parse_count(k, v); }},
      {"field", [](RunConfig& c, const auto&, const auto& v) { c.field = trim(v); }},
      {"mean", [](RunConfig& c, const auto& k, const auto& v) { c.mean = parse_doubles(k, v); }},
      {"n0", [](RunConfig& c, const auto& k, const auto& v) { c.n0 = parse_counts(k, v); }},
      {"custom_file", [](RunConfig& c, const auto&, const auto& v) { c.custom_file = trim(v); }},
      {"gt_max", [](RunConfig& c, const auto& k, const auto& v) { c.gt_max = parse_double(k, v); }},
      {"gt_steps", [](RunConfig& c, const auto& k, const auto& v) { c.gt_steps = parse_count(k, v); }},
      {"convention", [](RunConfig& c, const auto&, const auto& v) { c.convention = parse_convention(trim(v)); }},
      {"formulas", [](RunConfig& c, const auto&, const auto& v) { c.formulas = parse_formulas(v); }},
      {"oracle", [](RunConfig& c, const auto& k, const auto& v) { c.oracle = parse_bool(k, v); }},
      {"sigma_width", [](RunConfig& c, const auto& k, const auto& v) { c.sigma_width = parse_double(k, v); }},
      {"coverage_epsilon",
       [](RunConfig& c, const auto& k, const auto& v) { c.coverage_epsilon = parse_double(k, v); }},
      {"out", [](RunConfig& c, const auto&, const auto& v) { c.out = trim(v); }},
      {"sweep_gt", [](RunConfig& c, const auto& k, const auto& v) { c.sweep_gt = parse_doubles(k, v); }},
      {"sweep_modes", [](RunConfig& c, const auto& k, const auto& v) { c.sweep_modes = parse_counts(k, v); }},
      {"threshold", [](RunConfig& c, const auto& k, const auto& v) { c.threshold = parse_double(k, v); }},
      {"max_j", [](RunConfig& c, const auto& k, const auto& v) { c.max_j = parse_count(k, v); }},
      {"atoms", [](RunConfig& c, const auto& k, const auto& v) { c.atoms = parse_count(k, v); }},
      {"diag_means", [](RunConfig& c, const auto& k, const auto& v) { c.diag_means = parse_doubles(k, v); }},
      {"p", [](RunConfig& c, const auto& k, const auto& v) { c.p = static_cast<int>(parse_count(k, v)); }},
      {"diag_modes", [](RunConfig& c, const auto& k, const auto& v) { c.diag_modes = parse_count(k, v); }},
      {"diag_max_occupancy",
       [](RunConfig& c, const auto& k, const auto& v) { c.diag_max_occupancy = parse_count(k, v); }},
      {"input", [](RunConfig& c, const auto&, const auto& v) { c.input = trim(v); }},
      {"column", [](RunConfig& c, const auto&, const auto& v) { c.column = trim(v); }},
      {"rate_window", [](RunConfig& c, const auto& k, const auto& v) { c.rate_window = parse_doubles(k, v); }},
  };
  return table;
}

// Writes through a temporary file renamed into place, so a failed run leaves
// no partial output behind.
void write_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path partial = target;
  partial += ".partial";
  try {
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      if (!out) throw ConfigurationError("cannot open output file '" + path + "'");
      writer(out);
      out.flush();
      if (!out) throw ConfigurationError("failed writing output file '" + path + "'");
    }
    std::filesystem::rename(partial, target);
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(partial, ignored);
    throw;
  }
}

std::vector<std::string> cost_warnings(const RunConfig& c) {
  std::vector<std::string> out;
  if (c.oracle && c.modes >= 3) {
    for (std::size_t k = 0; k < c.modes; ++k) {
      if (c.field == "coherent" && c.mode_mean(k) > 10.0) {
        out.push_back("warning: exact evolution with " + std::to_string(c.modes) +
                      " modes and mean > 10 builds very large sectors and may be slow");
        break;
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& entry : setters()) k.push_back(entry.first);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(config, key, value);
      return;
    }
  }
  throw ConfigurationError("unknown configuration key '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path.string() + "'");
  std::map<std::string, std::string> settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigurationError(path.string() + ":" + std::to_string(line_no) + ": expected `key = value`");
    }
    auto key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    settings[key] = value;
  }
  return settings;
}

double RunConfig::mode_mean(std::size_t k) const { return mean.size() == 1 ? mean[0] : mean.at(k); }

void RunConfig::validate() const {
  if (modes < 1) throw ConfigurationError("modes must be >= 1");
  if (gt_steps < 2) throw ConfigurationError("gt_steps must be >= 2");
  if (!(gt_max > 0.0)) throw ConfigurationError("gt_max must be > 0");
  if (field != "coherent" && field != "fock" && field != "custom") {
    throw ConfigurationError("field must be coherent, fock or custom");
  }
  if (field == "coherent") {
    if (mean.size() != 1 && mean.size() != modes) {
      throw ConfigurationError("mean needs one value or one value per mode");
    }
    for (double m : mean) {
      if (!(m >= 0.0)) throw ConfigurationError("mean photon number must be >= 0");
    }
  }
  if (field == "fock" && n0.size() != 1 && n0.size() != modes) {
    throw ConfigurationError("n0 needs one value or one value per mode");
  }
  if (field == "custom" && custom_file.empty()) throw ConfigurationError("field = custom needs custom_file");
  if (!(sigma_width > 0.0)) throw ConfigurationError("sigma_width must be > 0");
  if (!(coverage_epsilon > 0.0 && coverage_epsilon < 1.0)) {
    throw ConfigurationError("coverage_epsilon must lie in (0, 1)");
  }
  if (!(threshold > 0.0 && threshold <= 0.1)) throw ConfigurationError("threshold must lie in (0, 0.1]");
  if (max_j < 1) throw ConfigurationError("max_j must be >= 1");
  if (atoms != 1 && atoms != 2) throw ConfigurationError("atoms must be 1 or 2");
}

std::vector<FieldDistribution> RunConfig::fields() const {
  validate();
  std::vector<FieldDistribution> out;
  const WindowOptions window{sigma_width, coverage_epsilon};
  for (std::size_t k = 0; k < modes; ++k) {
    if (field == "coherent") {
      out.push_back(FieldDistribution::coherent(mode_mean(k), window));
    } else if (field == "fock") {
      out.push_back(FieldDistribution::fock(n0.size() == 1 ? n0[0] : n0[k]));
    } else {
      out.push_back(load_custom_distribution(custom_file));
    }
  }
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_timeseries_csv(std::ostream& out, const TimeSeries& series) {
  out << "gt,W,concurrence,eof";
  if (series.has_oracle()) out << ",W_oracle,concurrence_oracle,eof_oracle,delta_C";
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& r = series.records[i];
    out << format_number(r.gt) << ',' << format_number(r.W) << ',' << format_number(r.concurrence) << ','
        << format_number(r.eof);
    if (series.has_oracle()) {
      const auto& o = series.oracle[i];
      out << ',' << format_number(o.W) << ',' << format_number(o.concurrence) << ',' << format_number(o.eof) << ','
          << format_number(std::abs(r.concurrence - o.concurrence));
    }
    out << '\n';
  }
}

void write_inversion_csv(std::ostream& out, const TimeSeries& series) {
  out << "gt,W\n";
  for (const auto& r : series.records) out << format_number(r.gt) << ',' << format_number(r.W) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "m,gt,concurrence,eof\n";
  for (const auto& r : rows) {
    out << r.modes << ',' << format_number(r.gt) << ',' << format_number(r.concurrence) << ','
        << format_number(r.eof) << '\n';
  }
}

bool CsvTable::has(const std::string& name) const {
  return std::ranges::find(header, name) != header.end();
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const auto it = std::ranges::find(header, name);
  if (it == header.end()) throw ConfigurationError("CSV has no column '" + name + "'");
  return columns[static_cast<std::size_t>(it - header.begin())];
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open CSV '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ConfigurationError("CSV '" + path.string() + "' is empty");
  for (auto& name : split_list(line)) table.header.push_back(name);
  table.columns.resize(table.header.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_list(line);
    if (cells.size() != table.header.size()) {
      throw ConfigurationError(path.string() + ":" + std::to_string(line_no) + ": wrong number of fields");
    }
    for (std::size_t k = 0; k < cells.size(); ++k) table.columns[k].push_back(parse_double(table.header[k], cells[k]));
  }
  return table;
}

TimeSeries run_timeseries(const RunConfig& config) {
  const auto fields = config.fields();
  const auto grid = uniform_grid(config.gt_max, config.gt_steps);
  TimeSeries series = simulate({fields, config.convention, config.formulas}, grid);
  if (config.oracle) {
    const TimeSeries exact = simulate_exact(fields, grid);
    deviation_report(series, exact);
  }
  if (!config.out.empty()) write_output(config.out, [&](std::ostream& out) { write_timeseries_csv(out, series); });
  return series;
}

TimeSeries run_inversion(const RunConfig& config) {
  const auto fields = config.fields();
  const auto grid = uniform_grid(config.gt_max, config.gt_steps);
  TimeSeries series;
  if (config.atoms == 1) {
    if (config.modes != 1) throw ConfigurationError("single-atom inversion is defined for one mode");
    series = simulate_single_atom(fields[0], grid);
  } else {
    series = simulate({fields, config.convention, config.formulas}, grid);
  }
  if (!config.out.empty()) write_output(config.out, [&](std::ostream& out) { write_inversion_csv(out, series); });
  return series;
}

std::vector<SweepRow> run_mode_sweep(const RunConfig& config) {
  config.validate();
  if (config.field != "coherent") throw ConfigurationError("sweep-modes uses coherent fields");
  const auto rows = mode_sweep(config.sweep_gt, config.mode_mean(0), config.sweep_modes, config.convention,
                               {config.sigma_width, config.coverage_epsilon});
  if (!config.out.empty()) write_output(config.out, [&](std::ostream& out) { write_sweep_csv(out, rows); });
  return rows;
}

std::string run_diagnostics(const RunConfig& config) {
  config.validate();
  std::ostringstream report;
  report << "# tcmsim diagnostics\n\n[expansion]\n"
         << expansion_diagnostic(config.p, config.diag_modes, config.diag_max_occupancy).format();

  const auto grid = uniform_grid(config.gt_max, config.gt_steps);
  for (double mean : config.diag_means) {
    RunConfig per_mean = config;
    per_mean.field = "coherent";
    per_mean.mean = {mean};
    const auto fields = per_mean.fields();
    const TimeSeries exact = simulate_exact(fields, grid);
    TimeSeries literal = simulate({fields, Convention::paper_literal, FormulaSet::automatic}, grid);
    TimeSeries consistent = simulate({fields, Convention::consistent, FormulaSet::automatic}, grid);
    const DeviationSummary literal_summary = deviation_report(literal, exact);
    const DeviationSummary consistent_summary = deviation_report(consistent, exact);

    const std::string tag = " mean=" + format_number(mean) + " modes=" + std::to_string(config.modes);
    report << "\n[deviation" << tag << "]\n";
    std::istringstream lit(literal_summary.format());
    for (std::string line; std::getline(lit, line);) report << "literal_vs_oracle." << line << '\n';
    std::istringstream con(consistent_summary.format());
    for (std::string line; std::getline(con, line);) report << "consistent_vs_oracle." << line << '\n';

    report << "\n[norm_deficit" << tag << "]\ngt,literal,consistent,oracle\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      report << format_number(grid[i]) << ',' << format_number(literal.records[i].norm_deficit) << ','
             << format_number(consistent.records[i].norm_deficit) << ','
             << format_number(exact.records[i].norm_deficit) << '\n';
    }
  }
  const std::string text = report.str();
  if (!config.out.empty()) write_output(config.out, [&](std::ostream& out) { out << text; });
  return text;
}

std::string run_analyze(const RunConfig& config) {
  if (config.input.empty()) throw ConfigurationError("analyze needs an input CSV (--input)");
  if (!(config.threshold > 0.0 && config.threshold <= 0.1)) {
    throw ConfigurationError("threshold must lie in (0, 0.1]");
  }
  const CsvTable table = read_csv(config.input);
  const auto& gt = table.column("gt");
  const auto& values = table.column(config.column);

  std::ostringstream out;
  out << "input = " << config.input << "\ncolumn = " << config.column << "\n\n[revival]\n";
  const double mean = config.mode_mean(0);
  out << "mean = " << format_number(mean) << '\n';
  try {
    const auto report = detect_revival_peaks(gt, values, config.max_j, mean);
    for (std::size_t j = 0; j < report.requested; ++j) {
      out << "j = " << j + 1 << ", predicted = " << format_number(report.predicted[j]);
      if (j < report.peak_times.size()) {
        out << ", detected = " << format_number(report.peak_times[j])
            << ", relative_error = " << format_number(report.relative_errors[j]);
      } else {
        out << ", detected = none";
      }
      out << '\n';
    }
    if (!report.note.empty()) out << "note = " << report.note << '\n';
  } catch (const ConfigurationError& e) {
    out << "skipped = " << e.what() << '\n';
  }

  out << "\n[collapse]\nthreshold = " << format_number(config.threshold) << '\n';
  const std::string collapse_column = table.has("concurrence") ? "concurrence" : config.column;
  out << "collapse_column = " << collapse_column << '\n';
  for (const auto& interval : collapse_windows(gt, table.column(collapse_column), config.threshold)) {
    out << "interval = " << format_number(interval.start) << ',' << format_number(interval.end) << '\n';
  }

  if (!config.rate_window.empty()) {
    if (config.rate_window.size() != 2) throw ConfigurationError("rate_window needs two values lo,hi");
    const Interval window{config.rate_window[0], config.rate_window[1]};
    out << "\n[rate]\nwindow = " << format_number(window.start) << ',' << format_number(window.end)
        << "\nrate = " << format_number(oscillation_rate(gt, values, window)) << '\n';
  }
  const std::string text = out.str();
  if (!config.out.empty()) write_output(config.out, [&](std::ostream& o) { o << text; });
  return text;
}

// ---------------------------------------------------------------------------

namespace {

struct Subcommand {
  CLI::App* app;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
  std::string config_file;
};

void add_keys(Subcommand& sub, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    std::string names = "--" + dashed;
    if (dashed != key) names += std::string(",--") + key;
    CLI::Option* opt = nullptr;
    if (std::string_view(key) == "oracle") {
      opt = sub.app->add_flag_callback(names, [&sub] { sub.raw["oracle"] = "true"; }, "Also run the exact evolution");
    } else {
      opt = sub.app->add_option(names, sub.raw[key]);
    }
    sub.options[key] = opt;
  }
}

RunConfig resolve(Subcommand& sub, RunConfig config = {}) {
  if (!sub.config_file.empty()) {
    for (const auto& [key, value] : read_config_file(sub.config_file)) apply_setting(config, key, value);
  }
  for (const auto& [key, opt] : sub.options) {
    if (opt->count() > 0) apply_setting(config, key, sub.raw[key]);
  }
  return config;
}

constexpr std::initializer_list<const char*> kFieldKeys = {
    "modes", "field", "mean", "n0", "custom_file", "sigma_width", "coverage_epsilon"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tcmsim: entanglement dynamics of two atoms in a multimode cavity"};
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Subcommand>> subs;
  auto make = [&](const std::string& name, const std::string& description,
                  std::initializer_list<std::initializer_list<const char*>> groups) {
    auto sub = std::make_unique<Subcommand>();
    sub->app = app.add_subcommand(name, description);
    sub->app->add_option("--config", sub->config_file, "key = value configuration file (flags override it)");
    for (auto keys : groups) add_keys(*sub, keys);
    subs.push_back(std::move(sub));
    return subs.back().get();
  };

  Subcommand* run = make("run", "Closed-form W, concurrence and E_F time series (CSV)",
                         {kFieldKeys, {"gt_max", "gt_steps", "convention", "formulas", "oracle", "out"}});
  Subcommand* inversion = make("inversion", "Single-atom or two-atom inversion time series (CSV)",
                               {kFieldKeys, {"gt_max", "gt_steps", "convention", "formulas", "atoms", "out"}});
  Subcommand* sweep = make("sweep-modes", "Entanglement against mode count at fixed gt values (CSV)",
                           {{"mean", "sigma_width", "coverage_epsilon", "convention", "sweep_gt", "sweep_modes", "out"}});
  Subcommand* compare = make("compare-oracle", "Closed form against exact evolution (CSV + summary)",
                             {kFieldKeys, {"gt_max", "gt_steps", "convention", "formulas", "out"}});
  Subcommand* diagnose =
      make("diagnose", "Expansion check, closed-form deviations and norm deficits (text report)",
           {{"modes", "sigma_width", "coverage_epsilon", "gt_max", "gt_steps", "diag_means", "p", "diag_modes",
             "diag_max_occupancy", "out"}});
  Subcommand* analyze = make("analyze", "Revival peaks, collapse windows and oscillation rate of a CSV",
                             {{"input", "column", "mean", "max_j", "threshold", "rate_window", "out"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->app->parsed()) {
      RunConfig config = resolve(*run);
      for (const auto& w : cost_warnings(config)) std::cerr << w << '\n';
      const TimeSeries series = run_timeseries(config);
      if (config.out.empty()) write_timeseries_csv(std::cout, series);
    } else if (inversion->app->parsed()) {
      RunConfig config = resolve(*inversion);
      const TimeSeries series = run_inversion(config);
      if (config.out.empty()) write_inversion_csv(std::cout, series);
    } else if (sweep->app->parsed()) {
      // Mode sweeps reproduce the printed multimode formulas unless asked otherwise.
      RunConfig defaults;
      defaults.convention = Convention::paper_literal;
      RunConfig config = resolve(*sweep, defaults);
      const auto rows = run_mode_sweep(config);
      if (config.out.empty()) write_sweep_csv(std::cout, rows);
    } else if (compare->app->parsed()) {
      RunConfig config = resolve(*compare);
      config.oracle = true;
      for (const auto& w : cost_warnings(config)) std::cerr << w << '\n';
      TimeSeries series = run_timeseries(config);
      TimeSeries exact;
      exact.records.reserve(series.size());
      for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& o = series.oracle[i];
        exact.records.push_back({series.records[i].gt, o.W, o.concurrence, o.eof, o.norm_deficit});
      }
      const DeviationSummary summary = deviation_report(series, exact);
      if (config.out.empty()) {
        write_timeseries_csv(std::cout, series);
        std::cerr << summary.format();
      } else {
        std::cout << summary.format();
      }
    } else if (diagnose->app->parsed()) {
      RunConfig config = resolve(*diagnose);
      const std::string text = run_diagnostics(config);
      if (config.out.empty()) std::cout << text;
    } else if (analyze->app->parsed()) {
      RunConfig config = resolve(*analyze);
      const std::string text = run_analyze(config);
      if (config.out.empty()) std::cout << text;
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace tcm::cli

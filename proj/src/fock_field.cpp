#include "tcm/fock_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tcm/errors.hpp"

namespace tcm {

TruncationWindow::TruncationWindow(std::size_t lo, std::size_t hi) : n_min(lo), n_max(hi) {
  if (lo > hi) {
    throw ConfigurationError("truncation window requires n_min <= n_max, got [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
  }
}

std::size_t FockConfig::total() const noexcept {
  return std::accumulate(occupations.begin(), occupations.end(), std::size_t{0});
}

std::string to_string(const FockConfig& config) {
  std::string out = "(";
  for (std::size_t k = 0; k < config.mode_count(); ++k) {
    if (k) out += ",";
    out += std::to_string(config[k]);
  }
  return out + ")";
}

namespace {

double log_poisson(double mean, std::size_t n) {
  const double dn = static_cast<double>(n);
  return -mean + dn * std::log(mean) - std::lgamma(dn + 1.0);
}

double amplitude_norm(std::span<const Complex> amplitudes) {
  double sum = 0.0;
  for (const auto& c : amplitudes) sum += std::norm(c);
  return sum;
}

}  // namespace

std::vector<Complex> coherent_amplitudes(double mean, TruncationWindow window) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw ConfigurationError("coherent mean photon number must be finite and >= 0");
  }
  std::vector<Complex> out(window.size());
  for (std::size_t n = window.n_min; n <= window.n_max; ++n) {
    double c = 0.0;
    if (mean == 0.0) {
      c = n == 0 ? 1.0 : 0.0;
    } else {
      c = std::exp(0.5 * log_poisson(mean, n));
    }
    out[n - window.n_min] = c;
  }
  return out;
}

double poisson_coverage(double mean, TruncationWindow window) {
  if (mean == 0.0) return window.n_min == 0 ? 1.0 : 0.0;
  double sum = 0.0;
  for (std::size_t n = window.n_min; n <= window.n_max; ++n) sum += std::exp(log_poisson(mean, n));
  return sum;
}

TruncationWindow default_window(double mean, double sigma_width, double coverage_epsilon) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw ConfigurationError("coherent mean photon number must be finite and >= 0");
  }
  if (mean == 0.0) return {0, 0};
  const double spread = sigma_width * std::sqrt(mean);
  const double lo = std::floor(mean - spread);
  TruncationWindow window{lo <= 0.0 ? 0 : static_cast<std::size_t>(lo),
                          static_cast<std::size_t>(std::ceil(mean + spread))};

  // Poisson tails are log-concave, so alternating one-step widenings reach the
  // coverage target quickly.
  while (poisson_coverage(mean, window) < 1.0 - coverage_epsilon) {
    const double below = window.n_min > 0 ? std::exp(log_poisson(mean, window.n_min - 1)) : 0.0;
    const double above = std::exp(log_poisson(mean, window.n_max + 1));
    if (below > above) {
      --window.n_min;
    } else {
      ++window.n_max;
    }
  }
  return window;
}

FieldDistribution::FieldDistribution(FieldKind kind, double mean, TruncationWindow window,
                                     std::vector<Complex> amplitudes)
    : kind_(kind), mean_(mean), window_(window), amplitudes_(std::move(amplitudes)) {}

FieldDistribution FieldDistribution::coherent(double mean, const WindowOptions& options) {
  if (!(options.sigma_width > 0.0) || !(options.coverage_epsilon > 0.0)) {
    throw ConfigurationError("sigma_width and coverage_epsilon must be positive");
  }
  return coherent(mean, default_window(mean, options.sigma_width, options.coverage_epsilon));
}

FieldDistribution FieldDistribution::coherent(double mean, TruncationWindow window) {
  return FieldDistribution(FieldKind::coherent, mean, window, coherent_amplitudes(mean, window));
}

FieldDistribution FieldDistribution::fock(std::size_t n0) {
  return FieldDistribution(FieldKind::fock, static_cast<double>(n0), TruncationWindow{n0, n0}, {Complex{1.0, 0.0}});
}

FieldDistribution FieldDistribution::custom(std::vector<Complex> amplitudes) {
  if (amplitudes.empty()) throw ConfigurationError("custom field distribution is empty");
  const double norm = amplitude_norm(amplitudes);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ConfigurationError("custom field distribution has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(norm);
  double mean = 0.0;
  for (std::size_t n = 0; n < amplitudes.size(); ++n) {
    amplitudes[n] *= scale;
    mean += static_cast<double>(n) * std::norm(amplitudes[n]);
  }
  const TruncationWindow window{0, amplitudes.size() - 1};
  FieldDistribution field(FieldKind::custom, mean, window, std::move(amplitudes));
  if (std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "custom field distribution renormalized (input norm " << norm << ")";
    field.warnings_.push_back(msg.str());
  }
  return field;
}

Complex FieldDistribution::at(std::size_t n) const {
  if (!window_.contains(n)) {
    throw std::out_of_range("photon number " + std::to_string(n) + " outside truncation window [" +
                            std::to_string(window_.n_min) + ", " + std::to_string(window_.n_max) + "]");
  }
  return amplitudes_[n - window_.n_min];
}

Complex FieldDistribution::amplitude_or_zero(long long n) const noexcept {
  if (n < 0) return {};
  const auto u = static_cast<std::size_t>(n);
  return window_.contains(u) ? amplitudes_[u - window_.n_min] : Complex{};
}

double FieldDistribution::norm() const noexcept { return amplitude_norm(amplitudes_); }

FieldDistribution load_custom_distribution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open custom distribution file '" + path.string() + "'");
  std::vector<Complex> amplitudes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re)) {
      throw ConfigurationError(path.string() + ":" + std::to_string(line_no) + ": expected `re [im]`");
    }
    if (!(fields >> im)) {
      if (!fields.eof()) {
        throw ConfigurationError(path.string() + ":" + std::to_string(line_no) + ": malformed imaginary part");
      }
      im = 0.0;
    }
    std::string rest;
    if (fields >> rest) {
      throw ConfigurationError(path.string() + ":" + std::to_string(line_no) + ": trailing content '" + rest + "'");
    }
    amplitudes.emplace_back(re, im);
  }
  return FieldDistribution::custom(std::move(amplitudes));
}

std::vector<FockConfig> enumerate_configs(std::span<const TruncationWindow> windows) {
  if (windows.empty()) throw ConfigurationError("enumerate_configs needs at least one mode window");
  const ConfigGrid grid(std::vector<TruncationWindow>(windows.begin(), windows.end()));
  std::vector<FockConfig> configs;
  configs.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) configs.push_back(grid.config_at(i));
  return configs;
}

Complex joint_weight(const FockConfig& config, std::span<const FieldDistribution> fields) {
  if (config.mode_count() != fields.size()) {
    throw ConfigurationError("configuration has " + std::to_string(config.mode_count()) + " modes but " +
                             std::to_string(fields.size()) + " field distributions were given");
  }
  Complex w{1.0, 0.0};
  for (std::size_t k = 0; k < fields.size(); ++k) w *= fields[k].at(config[k]);
  return w;
}

ConfigGrid::ConfigGrid(std::vector<TruncationWindow> windows) : windows_(std::move(windows)) {
  if (windows_.empty()) throw ConfigurationError("configuration grid needs at least one mode");
  strides_.assign(windows_.size(), 1);
  size_ = 1;
  for (std::size_t k = windows_.size(); k-- > 0;) {
    strides_[k] = size_;
    size_ *= windows_[k].size();
  }
}

std::optional<std::size_t> ConfigGrid::index_of(std::span<const std::size_t> occupations) const noexcept {
  if (occupations.size() != windows_.size()) return std::nullopt;
  std::size_t index = 0;
  for (std::size_t k = 0; k < windows_.size(); ++k) {
    if (!windows_[k].contains(occupations[k])) return std::nullopt;
    index += (occupations[k] - windows_[k].n_min) * strides_[k];
  }
  return index;
}

std::optional<std::size_t> ConfigGrid::index_of(const FockConfig& config) const noexcept {
  return index_of(std::span<const std::size_t>(config.occupations));
}

void ConfigGrid::decode(std::size_t index, std::span<std::size_t> occupations) const {
  for (std::size_t k = 0; k < windows_.size(); ++k) {
    occupations[k] = windows_[k].n_min + index / strides_[k];
    index %= strides_[k];
  }
}

FockConfig ConfigGrid::config_at(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("configuration index out of range");
  std::vector<std::size_t> n(windows_.size());
  decode(index, n);
  return FockConfig(std::move(n));
}

}  // namespace tcm

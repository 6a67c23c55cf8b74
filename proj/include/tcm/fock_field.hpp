#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcm {

using Complex = std::complex<double>;

/// Inclusive photon-number range [n_min, n_max] kept for one mode.
struct TruncationWindow {
  std::size_t n_min = 0;
  std::size_t n_max = 0;

  TruncationWindow() = default;
  TruncationWindow(std::size_t lo, std::size_t hi);

  std::size_t size() const noexcept { return n_max - n_min + 1; }
  bool contains(std::size_t n) const noexcept { return n >= n_min && n <= n_max; }

  friend bool operator==(const TruncationWindow&, const TruncationWindow&) = default;
};

/// Photon occupations (n_1, ..., n_m) of the m cavity modes.
struct FockConfig {
  std::vector<std::size_t> occupations;

  FockConfig() = default;
  explicit FockConfig(std::vector<std::size_t> n) : occupations(std::move(n)) {}
  FockConfig(std::initializer_list<std::size_t> n) : occupations(n) {}

  std::size_t mode_count() const noexcept { return occupations.size(); }
  std::size_t total() const noexcept;
  std::size_t operator[](std::size_t k) const { return occupations[k]; }
  std::size_t& operator[](std::size_t k) { return occupations[k]; }

  friend auto operator<=>(const FockConfig&, const FockConfig&) = default;
};

std::string to_string(const FockConfig& config);

enum class FieldKind { coherent, fock, custom };

struct WindowOptions {
  double sigma_width = 6.0;
  double coverage_epsilon = 1e-12;
};

/// Initial photon-number amplitudes c_n(0) of one cavity mode, stored over a
/// contiguous truncation window. Immutable after construction.
class FieldDistribution {
 public:
  static FieldDistribution coherent(double mean, const WindowOptions& options = {});
  static FieldDistribution coherent(double mean, TruncationWindow window);
  static FieldDistribution fock(std::size_t n0);
  /// Amplitudes indexed from n = 0. Normalized on construction; a warning is
  /// recorded when the input norm is off by more than 1e-6.
  static FieldDistribution custom(std::vector<Complex> amplitudes);

  FieldKind kind() const noexcept { return kind_; }
  const TruncationWindow& window() const noexcept { return window_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Nominal parameter: the coherent mean, n0 for a Fock state, <n> for custom.
  double mean() const noexcept { return mean_; }

  /// c_n; throws std::out_of_range outside the window.
  Complex at(std::size_t n) const;
  /// c_n, or zero for n < 0 or n outside the window.
  Complex amplitude_or_zero(long long n) const noexcept;

  /// Sum of |c_n|^2 over the window.
  double norm() const noexcept;

 private:
  FieldDistribution(FieldKind kind, double mean, TruncationWindow window, std::vector<Complex> amplitudes);

  FieldKind kind_;
  double mean_;
  TruncationWindow window_;
  std::vector<Complex> amplitudes_;
  std::vector<std::string> warnings_;
};

/// Poissonian amplitudes e^{-mean/2} mean^{n/2} / sqrt(n!) with zero phase.
std::vector<Complex> coherent_amplitudes(double mean, TruncationWindow window);

/// Poisson probability mass captured by `window`.
double poisson_coverage(double mean, TruncationWindow window);

/// mean -/+ sigma_width*sqrt(mean), widened until the Poisson coverage is at
/// least 1 - coverage_epsilon.
TruncationWindow default_window(double mean, double sigma_width = 6.0, double coverage_epsilon = 1e-12);

/// Reads `re [im]` per line, starting at n = 0. Blank lines and lines starting
/// with '#' are skipped.
FieldDistribution load_custom_distribution(const std::filesystem::path& path);

/// Lexicographic enumeration of the Cartesian product of the windows, last mode
/// varying fastest.
std::vector<FockConfig> enumerate_configs(std::span<const TruncationWindow> windows);

/// Product of the per-mode initial amplitudes c_{n_k}(0).
Complex joint_weight(const FockConfig& config, std::span<const FieldDistribution> fields);

/// Dense mixed-radix indexing of all configurations inside per-mode windows.
/// Index order matches enumerate_configs.
class ConfigGrid {
 public:
  ConfigGrid() = default;
  explicit ConfigGrid(std::vector<TruncationWindow> windows);

  std::size_t mode_count() const noexcept { return windows_.size(); }
  std::size_t size() const noexcept { return size_; }
  const std::vector<TruncationWindow>& windows() const noexcept { return windows_; }
  std::size_t stride(std::size_t mode) const { return strides_[mode]; }

  std::optional<std::size_t> index_of(const FockConfig& config) const noexcept;
  std::optional<std::size_t> index_of(std::span<const std::size_t> occupations) const noexcept;
  FockConfig config_at(std::size_t index) const;
  void decode(std::size_t index, std::span<std::size_t> occupations) const;

 private:
  std::vector<TruncationWindow> windows_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

}  // namespace tcm

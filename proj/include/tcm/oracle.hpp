#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcm/closed_form.hpp"
#include "tcm/fock_field.hpp"
#include "tcm/inversion.hpp"
#include "tcm/reduced_density.hpp"

namespace tcm {

/// Number of excited atoms in a two-atom label.
std::size_t excited_atoms(Branch label) noexcept;

struct SectorState {
  Branch label;
  FockConfig config;

  friend bool operator==(const SectorState&, const SectorState&) = default;
};

/// All (atomic label, field config) states inside the windows whose total
/// excitation sum_k n_k + (excited atoms) equals `excitation`.
struct SectorBasis {
  std::size_t excitation = 0;
  std::vector<SectorState> states;
};

/// Interaction Hamiltonian restricted to one sector, in units of hbar*g. On
/// resonance all couplings are real, so the block is real symmetric.
struct HamiltonianBlock {
  SectorBasis sector;
  Eigen::MatrixXd matrix;
};

SectorBasis build_sector_basis(std::size_t excitation, std::size_t mode_count,
                               std::span<const TruncationWindow> windows);

HamiltonianBlock build_hamiltonian(const SectorBasis& sector);

class ExactEvolution;

/// Evolved atom-field state, stored as one coefficient vector per sector.
class OracleState {
 public:
  double time() const noexcept { return gt_; }
  std::span<const Eigen::VectorXcd> sectors() const noexcept { return coefficients_; }
  double norm() const noexcept;
  std::vector<double> sector_populations() const;

  /// Branch amplitudes for every configuration of the oracle grid.
  std::vector<BranchAmplitudes> branch_amplitudes() const;
  const ConfigGrid& grid() const noexcept;

 private:
  friend class ExactEvolution;
  struct Layout;

  OracleState(std::shared_ptr<const Layout> layout, double gt, std::vector<Eigen::VectorXcd> coefficients)
      : layout_(std::move(layout)), gt_(gt), coefficients_(std::move(coefficients)) {}

  std::shared_ptr<const Layout> layout_;
  double gt_;
  std::vector<Eigen::VectorXcd> coefficients_;
};

/// Exact evolution of |a_1 a_2> x prod_k |field_k> under the resonant
/// interaction Hamiltonian on a truncated Fock space. The field windows are
/// widened by two photons per mode on both sides; every excitation sector is
/// diagonalized once and reused for all times.
class ExactEvolution {
 public:
  explicit ExactEvolution(std::vector<FieldDistribution> fields);
  ~ExactEvolution();
  ExactEvolution(ExactEvolution&&) noexcept;
  ExactEvolution& operator=(ExactEvolution&&) noexcept;

  OracleState initial_state() const;
  OracleState evolve(double gt) const;
  /// Propagates an already evolved state by dgt.
  OracleState propagate(const OracleState& state, double dgt) const;

  std::size_t mode_count() const noexcept { return fields_.size(); }
  const ConfigGrid& grid() const noexcept;
  std::size_t sector_count() const noexcept;
  std::size_t largest_sector() const noexcept;
  const SectorBasis& sector_basis(std::size_t i) const;

 private:
  void check_norm(const OracleState& state) const;

  std::vector<FieldDistribution> fields_;
  std::shared_ptr<const OracleState::Layout> layout_;
  double initial_norm_ = 0.0;
};

TwoAtomDensity rho_atom_exact(const OracleState& state);
InversionPoint exact_inversion(const OracleState& state);

/// Check of the closed-form power expansions of the interaction operator
/// V = S_+ sum a_k + S_- sum a_k^dag on a tiny truncated space. Reports
/// deviations; it does not assert agreement.
struct ExpansionReport {
  int p = 1;
  std::size_t mode_count = 1;
  std::size_t max_occupancy = 3;
  std::size_t dimension = 0;
  double even_deviation = 0.0;  // max |V^{2p} - printed expansion|
  double odd_deviation = 0.0;   // max |V^{2p+1} - printed expansion|
  // Same, restricted to columns whose occupations stay below the cutoff for
  // all 2p+1 steps (truncation-free); empty when no such column exists.
  std::optional<double> even_interior_deviation;
  std::optional<double> odd_interior_deviation;
  double trace_v2 = 0.0;
  double trace_v2_enumerated = 0.0;  // sum of squared couplings, counted directly
  double power_route_deviation = 0.0;  // square-and-multiply vs sequential V^{2p}

  std::string format() const;
};

ExpansionReport expansion_diagnostic(int p, std::size_t mode_count, std::size_t max_occupancy = 3);

}  // namespace tcm

#pragma once

#include <array>

#include <Eigen/Dense>

#include "tcm/reduced_density.hpp"

namespace tcm {

struct ConcurrenceResult {
  double value = 0.0;
  /// Eigenvalues of rho * rho_tilde, clamped and sorted in descending order.
  std::array<double, 4> lambda{};
};

struct EntanglementPoint {
  double gt = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  std::array<double, 4> lambda{};
};

/// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho);
Eigen::Matrix4cd spin_flip(const TwoAtomDensity& rho);

/// Wootters concurrence max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
/// Throws NumericalFailure if an eigenvalue has an imaginary part above 1e-10
/// or is more negative than -1e-10.
ConcurrenceResult concurrence(const TwoAtomDensity& rho);

/// -x log2 x - (1 - x) log2(1 - x); throws DomainError outside [0, 1].
double binary_entropy(double x);

/// Entanglement of formation h((1 + sqrt(1 - C^2)) / 2).
double eof(double concurrence);

EntanglementPoint entanglement_point(double gt, const TwoAtomDensity& rho);

}  // namespace tcm

#pragma once

#include <Eigen/Dense>
#include <span>

#include "tcm/closed_form.hpp"

namespace tcm {

/// Two-atom reduced density matrix in the basis (|aa>, |ab>, |ba>, |bb>),
/// normalized to unit trace.
struct TwoAtomDensity {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  double norm_deficit = 0.0;    // 1 - trace before normalization
  double min_eigenvalue = 0.0;  // of rho, before any clamping downstream

  Complex operator()(Branch row, Branch col) const {
    return rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
};

/// Validates and wraps a matrix: must be Hermitian to 1e-12 and PSD to -1e-10.
/// It is normalized to unit trace; the deficit is recorded.
TwoAtomDensity make_density(const Eigen::Matrix4cd& unnormalized);

/// rho[b, b'] = sum_f amp(b, f) conj(amp(b', f)) over the given per-config
/// branch amplitudes.
TwoAtomDensity density_from_amplitudes(std::span<const BranchAmplitudes> entries);

/// Traces the field out of an amplitude set. Throws NumericalFailure when the
/// set carries no weight or rho is not positive semidefinite.
TwoAtomDensity partial_trace(const AmplitudeSet& set);

}  // namespace tcm

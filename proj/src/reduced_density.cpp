#include "tcm/reduced_density.hpp"

#include <cmath>
#include <sstream>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kNegativityTolerance = 1e-10;

}  // namespace

TwoAtomDensity make_density(const Eigen::Matrix4cd& unnormalized) {
  const double asymmetry = (unnormalized - unnormalized.adjoint()).cwiseAbs().maxCoeff();
  const double trace = unnormalized.trace().real();
  if (!(trace > 0.0) || !std::isfinite(trace)) {
    throw NumericalFailure("reduced density matrix has zero or non-finite trace");
  }
  if (asymmetry > kHermitianTolerance * std::max(1.0, trace)) {
    std::ostringstream msg;
    msg << "reduced density matrix is not Hermitian (max |rho - rho^dag| = " << asymmetry << ")";
    throw NumericalFailure(msg.str());
  }

  TwoAtomDensity out;
  out.rho = unnormalized / trace;
  out.norm_deficit = 1.0 - trace;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(out.rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  if (out.min_eigenvalue < -kNegativityTolerance) {
    std::ostringstream msg;
    msg << "reduced density matrix is not positive semidefinite (min eigenvalue " << out.min_eigenvalue << ")";
    throw NumericalFailure(msg.str());
  }
  return out;
}

TwoAtomDensity density_from_amplitudes(std::span<const BranchAmplitudes> entries) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& e : entries) {
    const Eigen::Vector4cd v(e.aa, e.ab, e.ba, e.bb);
    rho.noalias() += v * v.adjoint();
  }
  return make_density(rho);
}

TwoAtomDensity partial_trace(const AmplitudeSet& set) {
  if (set.entries().empty()) throw NumericalFailure("cannot trace an empty amplitude set");
  return density_from_amplitudes(set.entries());
}

}  // namespace tcm

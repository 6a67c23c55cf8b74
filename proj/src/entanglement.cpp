#include "tcm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

constexpr double kEigenTolerance = 1e-10;
// Eigenvalues of rho below this (relative) are treated as exact zeros.
constexpr double kRankFloor = 1e-14;


// sigma_y x sigma_y is real with anti-diagonal (-1, +1, +1, -1).
Eigen::Matrix4cd flip_matrix() {
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  return flip;
}

}  // namespace

Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix4cd flip = flip_matrix();
  return flip * rho.conjugate() * flip;
}

Eigen::Matrix4cd spin_flip(const TwoAtomDensity& rho) { return spin_flip(rho.rho); }

ConcurrenceResult concurrence(const TwoAtomDensity& rho) {
  const Eigen::Matrix4cd product = rho.rho * spin_flip(rho.rho);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigen-solve of rho * rho_tilde did not converge");
  for (int i = 0; i < 4; ++i) {
    const Complex ev = solver.eigenvalues()[i];
    if (std::abs(ev.imag()) > kEigenTolerance || ev.real() < -kEigenTolerance) {
      std::ostringstream msg;
      msg << "rho * rho_tilde has an unphysical eigenvalue " << ev;
      throw NumericalFailure(msg.str());
    }
  }

  // The square roots of the eigenvalues of rho * rho_tilde are the singular
  // values of tau = X^T F X with rho = X X^dag and F = sigma_y x sigma_y. Taking
  // them directly avoids sqrt() of eigenvalues that are rounding noise.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> decomposition(rho.rho);
  const double floor = kRankFloor * std::max(1.0, decomposition.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::Matrix4cd x = decomposition.eigenvectors();
  for (int k = 0; k < 4; ++k) {
    const double w = decomposition.eigenvalues()[k];
    x.col(k) *= w > floor ? std::sqrt(w) : 0.0;
  }
  const Eigen::Matrix4cd tau = x.transpose() * flip_matrix() * x;
  const Eigen::Vector4d sigma = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();

  ConcurrenceResult out;
  for (int i = 0; i < 4; ++i) out.lambda[static_cast<std::size_t>(i)] = sigma[i] * sigma[i];
  const double c = sigma[0] - sigma[1] - sigma[2] - sigma[3];
  out.value = std::clamp(c, 0.0, 1.0);
  return out;
}

double binary_entropy(double x) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "binary entropy argument " << x << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double eof(double concurrence) {
  const double c = std::clamp(concurrence, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

EntanglementPoint entanglement_point(double gt, const TwoAtomDensity& rho) {
  const auto c = concurrence(rho);
  return {gt, c.value, eof(c.value), c.lambda};
}

}  // namespace tcm

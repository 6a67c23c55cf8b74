// Independent references for the tests: a brute-force simulator on the full
// (unblocked) atom-field space built from Kronecker products, and Wootters'
// concurrence from the eigenvalues of rho * rho_tilde.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace ref {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

inline MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Photon annihilation operator on {0..cut}.
inline MatrixXd lowering(int cut) {
  MatrixXd a = MatrixXd::Zero(cut + 1, cut + 1);
  for (int n = 1; n <= cut; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Resonant two-atom interaction S+ sum_k a_k + h.c. on atoms x modes, each mode
// truncated at `cut`. Atom order |a>=0, |b>=1, so the two-atom index
// 2*atom1 + atom2 runs aa, ab, ba, bb. Field index: mode 0 slowest.
struct FullSystem {
  int modes;
  int cut;
  long field_dim;
  MatrixXd H;

  FullSystem(int m, int c) : modes(m), cut(c) {
    field_dim = 1;
    for (int k = 0; k < m; ++k) field_dim *= (c + 1);
    MatrixXd sigma_minus = MatrixXd::Zero(2, 2);  // |b><a|
    sigma_minus(1, 0) = 1.0;
    const MatrixXd id2 = MatrixXd::Identity(2, 2);
    const MatrixXd s_minus = kron(sigma_minus, id2) + kron(id2, sigma_minus);
    const MatrixXd s_plus = s_minus.transpose();
    MatrixXd a_sum = MatrixXd::Zero(field_dim, field_dim);
    const MatrixXd idf = MatrixXd::Identity(c + 1, c + 1);
    for (int k = 0; k < m; ++k) {
      MatrixXd op = MatrixXd::Identity(1, 1);
      for (int j = 0; j < m; ++j) op = kron(op, j == k ? lowering(c) : idf);
      a_sum += op;
    }
    H = kron(s_plus, a_sum) + kron(s_minus, a_sum.transpose());
  }

  // |aa> x prod_k sum_n c_k[n] |n>, amplitudes beyond the cutoff dropped.
  VectorXcd initial(const std::vector<std::vector<cd>>& fields) const {
    VectorXcd field = VectorXcd::Ones(1);
    for (const auto& c : fields) {
      VectorXcd mode = VectorXcd::Zero(cut + 1);
      for (std::size_t n = 0; n < c.size() && n <= static_cast<std::size_t>(cut); ++n) mode[static_cast<Eigen::Index>(n)] = c[n];
      VectorXcd next(field.size() * mode.size());
      for (Eigen::Index i = 0; i < field.size(); ++i) next.segment(i * mode.size(), mode.size()) = field[i] * mode;
      field = next;
    }
    VectorXcd psi = VectorXcd::Zero(4 * field_dim);
    psi.head(field_dim) = field;
    return psi;
  }
};

// exp(-i H t) psi via the spectral decomposition of the full Hamiltonian.
class Propagator {
 public:
  explicit Propagator(const MatrixXd& h) : solver_(h) {}
  VectorXcd apply(const VectorXcd& psi, double t) const {
    const MatrixXcd v = solver_.eigenvectors().cast<cd>();
    VectorXcd coeff = v.adjoint() * psi;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] *= std::exp(cd(0.0, -solver_.eigenvalues()[i] * t));
    return v * coeff;
  }

 private:
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver_;
};

// Partial trace over the field: rho = Psi Psi^dag with Psi the 4 x D reshape.
inline Eigen::Matrix4cd reduce(const VectorXcd& psi, long field_dim) {
  Eigen::Matrix<cd, 4, Eigen::Dynamic> m(4, field_dim);
  for (int a = 0; a < 4; ++a) m.row(a) = psi.segment(a * field_dim, field_dim).transpose();
  return m * m.adjoint();
}

inline double inversion(const Eigen::Matrix4cd& rho) { return (rho(0, 0) - rho(3, 3)).real() / rho.trace().real(); }

// Textbook Wootters concurrence via a general eigen-solve of rho * rho_tilde,
// in long double so that square roots of the vanishing eigenvalues stay small.
inline double concurrence(const Eigen::Matrix4cd& input) {
  using cl = std::complex<long double>;
  using M = Eigen::Matrix<cl, 4, 4>;
  M rho = input.cast<cl>();
  rho /= rho.trace();
  M yy = M::Zero();
  yy(0, 3) = -1.0L;
  yy(1, 2) = 1.0L;
  yy(2, 1) = 1.0L;
  yy(3, 0) = -1.0L;
  const M tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<M> es(rho * tilde);
  std::vector<long double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0L, es.eigenvalues()[i].real())));
  std::sort(l.rbegin(), l.rend());
  return static_cast<double>(std::max(0.0L, l[0] - l[1] - l[2] - l[3]));
}

// Concurrence of a pure two-qubit state |<psi| sigma_y x sigma_y |psi*>|.
inline double pure_concurrence(const Eigen::Vector4cd& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

inline double entropy2(double x) {
  double h = 0.0;
  if (x > 0) h -= x * std::log2(x);
  if (x < 1) h -= (1 - x) * std::log2(1 - x);
  return h;
}

inline double eof_from_c(double c) { return entropy2(0.5 * (1.0 + std::sqrt(1.0 - c * c))); }

inline std::vector<cd> poisson_amplitudes(double mean, int n_max) {
  std::vector<cd> c;
  for (int n = 0; n <= n_max; ++n) {
    double log_p = -mean + n * (mean > 0 ? std::log(mean) : 0.0) - std::lgamma(n + 1.0);
    c.emplace_back(mean == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::exp(0.5 * log_p), 0.0);
  }
  return c;
}

inline Eigen::Matrix4cd projector(const Eigen::Vector4cd& v) { return v * v.adjoint(); }

}  // namespace ref

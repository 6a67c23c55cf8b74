#include "doctest.h"

#include <cmath>
#include <random>

#include "support/reference.hpp"
#include "tcm/entanglement.hpp"
#include "tcm/errors.hpp"

using namespace tcm;

namespace {

TwoAtomDensity from(const Eigen::Matrix4cd& m) { return make_density(m); }

Eigen::Matrix4cd bell() {
  Eigen::Vector4cd v(1.0, 0.0, 0.0, 1.0);
  return ref::projector(v / std::sqrt(2.0));
}

Eigen::Matrix2cd random_unitary(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = Complex(g(rng), g(rng));
  return Eigen::HouseholderQR<Eigen::Matrix2cd>(a).householderQ();
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix4cd random_density(std::mt19937& rng, int rank) {
  std::normal_distribution<double> g;
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> x(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) x(i, j) = Complex(g(rng), g(rng));
  Eigen::Matrix4cd rho = x * x.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("spin flip") {
  Eigen::Matrix4cd aa = Eigen::Matrix4cd::Zero();
  aa(0, 0) = 1.0;
  Eigen::Matrix4cd bb = Eigen::Matrix4cd::Zero();
  bb(3, 3) = 1.0;
  CHECK((spin_flip(aa) - bb).norm() < 1e-15);
  const Eigen::Matrix4cd mixed = Eigen::Matrix4cd::Identity() / 4.0;
  CHECK((spin_flip(mixed) - mixed).norm() < 1e-15);
  CHECK((spin_flip(bell()) - bell()).norm() < 1e-15);
}

TEST_CASE("concurrence of reference states") {
  CHECK(concurrence(from(bell())).value == doctest::Approx(1.0).epsilon(1e-9));
  Eigen::Matrix4cd product = Eigen::Matrix4cd::Zero();
  product(0, 0) = 1.0;
  CHECK(concurrence(from(product)).value == doctest::Approx(0.0));
  const Eigen::Matrix4cd werner = 0.5 * bell() + 0.5 * Eigen::Matrix4cd::Identity() / 4.0;
  CHECK(concurrence(from(werner)).value == doctest::Approx(0.25).epsilon(1e-9));
  Eigen::Vector4cd pure(0.6, 0.0, 0.0, 0.8);
  CHECK(concurrence(from(ref::projector(pure))).value == doctest::Approx(0.96).epsilon(1e-9));
  CHECK(concurrence(from(Eigen::Matrix4cd::Identity())).value == doctest::Approx(0.0));
}

TEST_CASE("Werner family (3p - 1)/2") {
  for (double p : {0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const Eigen::Matrix4cd w = p * bell() + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0;
    CHECK(concurrence(from(w)).value == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("pure states a|aa> + b|bb> give 2|ab|") {
  for (double theta = 0.0; theta <= 1.6; theta += 0.1) {
    const Complex a = std::cos(theta);
    const Complex b = std::polar(std::sin(theta), 0.3 * theta);
    Eigen::Vector4cd v(a, 0.0, 0.0, b);
    CHECK(std::abs(concurrence(from(ref::projector(v))).value - 2.0 * std::abs(a * b)) < 1e-10);
  }
}

TEST_CASE("random states against the textbook eigenvalue route") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int rank = 1 + trial % 4;
    const Eigen::Matrix4cd rho = random_density(rng, rank);
    const auto result = concurrence(from(rho));
    CHECK(std::abs(result.value - ref::concurrence(rho)) < 1e-9);
    const double trace = (rho * spin_flip(rho)).trace().real();
    const double sum = result.lambda[0] + result.lambda[1] + result.lambda[2] + result.lambda[3];
    CHECK(std::abs(sum - trace) < 1e-10);
    if (rank == 1) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
      CHECK(std::abs(result.value - ref::pure_concurrence(es.eigenvectors().col(3))) < 1e-10);
    }
  }
}

TEST_CASE("local unitary invariance") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix4cd rho = random_density(rng, 2);
    const Eigen::Matrix4cd u = kron2(random_unitary(rng), random_unitary(rng));
    const Eigen::Matrix4cd rotated = u * rho * u.adjoint();
    CHECK(std::abs(concurrence(from(rho)).value - concurrence(from(rotated)).value) < 1e-9);
  }
}

TEST_CASE("binary entropy and entanglement of formation") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.9) == doctest::Approx(0.468996).epsilon(1e-6));
  CHECK(binary_entropy(-1e-13) == 0.0);
  CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.1), DomainError);

  CHECK(eof(0.0) == 0.0);
  CHECK(eof(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(eof(0.6) - ref::entropy2(0.9)) < 1e-12);
  CHECK(eof(0.6) == doctest::Approx(0.468996).epsilon(1e-6));

  double previous = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double e = eof(i / 1000.0);
    CHECK(e >= previous);
    previous = e;
  }
  CHECK(eof(1e-9) < 1e-12);
  CHECK(eof(1.0 - 1e-12) > 1.0 - 1e-6);
}

TEST_CASE("entanglement point") {
  const auto p = entanglement_point(2.5, from(bell()));
  CHECK(p.gt == 2.5);
  CHECK(p.concurrence == doctest::Approx(1.0));
  CHECK(p.eof == doctest::Approx(1.0));
}

#include "doctest.h"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "support/reference.hpp"
#include "tcm/closed_form.hpp"
#include "tcm/errors.hpp"
#include "tcm/reduced_density.hpp"

using namespace tcm;
using std::numbers::pi;

namespace {

const Complex I{0.0, 1.0};

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

// Direct transcription of the printed multimode formulas for configs with every
// n_k >= 1, so no square root of a negative number appears.
BranchAmplitudes printed_multimode(const std::vector<double>& n, double gt, const FieldDistribution& f) {
  const std::size_t m = n.size();
  auto c = [&](double k) { return f.amplitude_or_zero(static_cast<long long>(k)); };
  Complex w1 = 1, w2 = 1, w3 = 1;
  double s1 = 0, s2 = 0, s0 = 0, sq = 0;
  for (double nk : n) {
    w1 *= c(nk + 2);
    w2 *= c(nk);
    w3 *= c(nk + 1);
    s1 += std::sqrt(nk + 1);
    s2 += std::sqrt(nk + 2);
    s0 += std::sqrt(nk);
  }
  double d1 = 0, d2 = 0, d3 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      d1 += std::pow(std::sqrt(n[i] + 2) + std::sqrt(n[j] + 1), 2) + std::pow(std::sqrt(n[i] + 1) + std::sqrt(n[j] + 2), 2);
      d2 += std::pow(std::sqrt(n[i]) + std::sqrt(n[j] - 1), 2) + std::pow(std::sqrt(n[i] - 1) + std::sqrt(n[j]), 2);
      d3 += std::pow(std::sqrt(n[i] + 1) + std::sqrt(n[j]), 2) + std::pow(std::sqrt(n[i]) + std::sqrt(n[j] + 1), 2);
    }
  }
  for (double nk : n) sq += std::sqrt(nk + 1);
  BranchAmplitudes out;
  out.aa = w1 * (2 * s1 * s2 / d1) * (std::cos(gt * std::sqrt(d1)) - 1);
  out.bb = w2 * ((2 * s0 * s0 / d2) * (std::cos(gt * std::sqrt(d2)) - 1) + 1);
  const Complex x3 = w3 * (sq / std::sqrt(d3)) * std::sin(gt * std::sqrt(d3));
  out.ab = -I * x3;
  out.ba = -I * x3;
  return out;
}

}  // namespace

TEST_CASE("single-mode literal formulas as printed") {
  const auto field = FieldDistribution::coherent(3.0);
  auto c = [&](long long n) { return field.amplitude_or_zero(n); };

  SUBCASE("gt = 0 leaves only the bb survival term") {
    for (std::size_t n : {0u, 1u, 4u}) {
      const auto a = single_mode_literal(n, 0.0, field);
      CHECK(std::abs(a.aa) < 1e-15);
      CHECK(std::abs(a.ab) < 1e-15);
      CHECK(std::abs(a.ba) < 1e-15);
      CHECK(close(a.bb, c(static_cast<long long>(n)), 1e-15));
    }
  }
  SUBCASE("n = 1, gt = pi/sqrt(6)") {
    const double gt = pi / std::sqrt(6.0);
    const auto a = single_mode_literal(1, gt, field);
    CHECK(close(a.aa, c(3) * (std::sqrt(6.0) / 5.0) * (std::cos(gt * std::sqrt(10.0)) - 1.0), 1e-14));
    CHECK(close(a.bb, c(1) * (1.0 / 1.0) * (1.0 * std::cos(gt * std::sqrt(2.0)) + 0.0), 1e-14));
    const Complex x3 = c(2) * std::sqrt(2.0 / 6.0) * std::sin(gt * std::sqrt(6.0));
    CHECK(close(a.ab, -I * x3, 1e-14));
    CHECK(close(a.ba, -I * x3, 1e-14));
  }
  SUBCASE("n = 0, gt = 1") {
    const auto a = single_mode_literal(0, 1.0, field);
    CHECK(close(a.ba, -I * c(1) * std::sqrt(0.5) * std::sin(std::sqrt(2.0)), 1e-14));
    // (0 cos + 0 - 1) / (-1) = 1 regardless of time
    CHECK(close(a.bb, c(0), 1e-14));
  }
}

TEST_CASE("single-mode consistent block") {
  SUBCASE("identity at gt = 0") {
    for (std::size_t n : {0u, 3u, 40u}) {
      const auto a = single_mode_consistent(n, 0.0);
      CHECK(close(a.aa, 1.0, 1e-15));
      CHECK(std::abs(a.ab) + std::abs(a.ba) + std::abs(a.bb) < 1e-15);
    }
  }
  SUBCASE("vacuum at gt = pi/sqrt(6)") {
    const auto a = single_mode_consistent(0, pi / std::sqrt(6.0));
    CHECK(close(a.aa, 1.0 / 3.0, 1e-14));
    CHECK(std::abs(a.ab) < 1e-14);
    CHECK(std::abs(a.ba) < 1e-14);
    CHECK(close(a.bb, -2.0 * std::sqrt(2.0) / 3.0, 1e-14));
  }
  SUBCASE("matches the exponential of the three-state block") {
    for (std::size_t n : {0u, 1u, 7u}) {
      // couplings from <s,n+1| H |aa,n> and <bb,n+2| H |s,n+1>, s = (ab + ba)/sqrt 2
      const double a = std::sqrt(2.0 * (n + 1.0));
      const double b = std::sqrt(2.0 * (n + 2.0));
      Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
      h(0, 1) = h(1, 0) = a;
      h(1, 2) = h(2, 1) = b;
      for (double gt : {0.3, 1.7, 4.2}) {
        const Eigen::Matrix3cd u = (Complex(0.0, -gt) * h).exp();
        const auto amp = single_mode_consistent(n, gt);
        CHECK(close(amp.aa, u(0, 0), 1e-12));
        CHECK(close(amp.ab, u(1, 0) / std::sqrt(2.0), 1e-12));
        CHECK(close(amp.ba, u(1, 0) / std::sqrt(2.0), 1e-12));
        CHECK(close(amp.bb, u(2, 0), 1e-12));
        CHECK(amp.probability() == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("multimode literal formulas") {
  const std::vector<FieldDistribution> fields(2, FieldDistribution::coherent(2.0));
  SUBCASE("vacuum pair frequency 2 + sqrt 2") {
    const double gt = 0.8;
    const auto a = multimode_literal(FockConfig{0, 0}, gt, fields);
    const Complex c2 = fields[0].at(2);
    CHECK(close(a.aa, c2 * c2 * (12.0 * std::sqrt(2.0) - 16.0) * (std::cos((2.0 + std::sqrt(2.0)) * gt) - 1.0), 1e-14));
  }
  SUBCASE("gt = 0") {
    const auto a = multimode_literal(FockConfig{1, 3}, 0.0, fields);
    CHECK(std::abs(a.aa) < 1e-15);
    CHECK(std::abs(a.ab) < 1e-15);
    CHECK(close(a.bb, fields[0].at(1) * fields[1].at(3), 1e-15));
  }
  SUBCASE("matches a direct transcription") {
    const auto field = FieldDistribution::coherent(4.0);
    const std::vector<FieldDistribution> three(3, field);
    for (double gt : {0.4, 2.1}) {
      const auto expected = printed_multimode({1, 2, 3}, gt, field);
      const auto got = multimode_literal(FockConfig{1, 2, 3}, gt, three);
      for (Branch b : kBranches) CHECK(close(got[b], expected[b], 1e-13));
    }
    const std::vector<FieldDistribution> two(2, field);
    const auto expected = printed_multimode({2, 5}, 1.3, field);
    const auto got = multimode_literal(FockConfig{2, 5}, 1.3, two);
    for (Branch b : kBranches) CHECK(close(got[b], expected[b], 1e-13));
  }
  SUBCASE("symmetric under mode permutation") {
    const auto field = FieldDistribution::coherent(4.0);
    const std::vector<FieldDistribution> three(3, field);
    const auto a = multimode_literal(FockConfig{0, 2, 5}, 1.1, three);
    const auto b = multimode_literal(FockConfig{5, 0, 2}, 1.1, three);
    for (Branch br : kBranches) CHECK(close(a[br], b[br], 1e-14));
  }
  SUBCASE("single mode is rejected") {
    const std::vector<FieldDistribution> one{FieldDistribution::coherent(2.0)};
    CHECK_THROWS_AS(multimode_literal(FockConfig{1}, 1.0, one), UnsupportedConfiguration);
  }
}

TEST_CASE("multimode consistent collective block") {
  for (std::size_t n : {0u, 2u, 9u}) {
    const auto single = single_mode_consistent(n, 1.37);
    const auto multi = multimode_consistent(FockConfig{n}, 1.37);
    for (Branch b : kBranches) CHECK(close(single[b], multi[b], 1e-14));
  }
  for (double gt : {0.0, 0.5, 3.3}) {
    const auto a = multimode_consistent(FockConfig{1, 0, 4}, gt);
    CHECK(a.probability() == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto zero = multimode_consistent(FockConfig{3, 1}, 0.0);
  CHECK(close(zero.aa, 1.0, 1e-15));
}

TEST_CASE("assemble") {
  SUBCASE("gt = 0 consistent is the initial state") {
    const std::vector<FieldDistribution> fields{FieldDistribution::coherent(1.5), FieldDistribution::coherent(0.7)};
    const auto set = assemble({0.0, 2}, fields, Convention::consistent);
    CHECK(set.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto& grid = set.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto cfg = grid.config_at(i);
      const bool in_field = fields[0].window().contains(cfg[0]) && fields[1].window().contains(cfg[1]);
      const Complex expected = in_field ? joint_weight(cfg, fields) : Complex{};
      CHECK(close(set.amplitude(Branch::aa, cfg), expected, 1e-15));
      CHECK(std::abs(set.amplitude(Branch::bb, cfg)) == 0.0);
    }
  }
  SUBCASE("single-mode consistent norm within coverage") {
    const std::vector<FieldDistribution> fields{FieldDistribution::coherent(5.0)};
    for (double gt : {0.5, 2.0, 11.0}) {
      const double norm = assemble({gt, 1}, fields, Convention::consistent).norm();
      CHECK(norm >= 1.0 - 3e-12);
      CHECK(norm <= 1.0 + 1e-12);
    }
  }
  SUBCASE("literal single mode at gt = 0 puts c_n on bb") {
    const std::vector<FieldDistribution> fields{FieldDistribution::coherent(2.0)};
    const auto set = assemble({0.0, 1}, fields, Convention::paper_literal);
    for (std::size_t n = fields[0].window().n_min; n <= fields[0].window().n_max; ++n) {
      CHECK(close(set.amplitude(Branch::bb, FockConfig{n}), fields[0].at(n), 1e-15));
      CHECK(std::abs(set.amplitude(Branch::aa, FockConfig{n})) < 1e-15);
    }
  }
  SUBCASE("mode count mismatch and negative time") {
    const std::vector<FieldDistribution> fields{FieldDistribution::coherent(2.0)};
    CHECK_THROWS_AS(assemble({1.0, 2}, fields, Convention::consistent), ConfigurationError);
    CHECK_THROWS_AS(assemble({-1.0, 1}, fields, Convention::consistent), ConfigurationError);
  }
  SUBCASE("literal with one mode and multimode formulas") {
    const std::vector<FieldDistribution> fields{FieldDistribution::coherent(2.0)};
    CHECK_THROWS_AS(assemble({1.0, 1}, fields, Convention::paper_literal, FormulaSet::multimode),
                    UnsupportedConfiguration);
  }
}

TEST_CASE("consistent single mode equals brute-force evolution entry by entry") {
  const ref::FullSystem sys(1, 14);
  const ref::Propagator prop(sys.H);
  for (std::size_t n0 : {0u, 3u}) {
    const auto field = FieldDistribution::fock(n0);
    std::vector<ref::cd> c(n0 + 1, 0.0);
    c[n0] = 1.0;
    const auto psi0 = sys.initial({c});
    for (double gt : {0.7, 2.9}) {
      const auto psi = prop.apply(psi0, gt);
      const auto set = assemble({gt, 1}, std::vector<FieldDistribution>{field}, Convention::consistent);
      for (int branch = 0; branch < 4; ++branch) {
        for (std::size_t n = 0; n <= 14; ++n) {
          const Complex expected = psi[branch * sys.field_dim + static_cast<Eigen::Index>(n)];
          CHECK(close(set.amplitude(static_cast<Branch>(branch), FockConfig{n}), expected, 1e-10));
        }
      }
    }
  }
}

TEST_CASE("amplitudes are bounded by the contributing initial weights") {
  const auto field = FieldDistribution::coherent(1.2);
  const std::vector<FieldDistribution> fields{field};
  const auto set = assemble({2.4, 1}, fields, Convention::consistent);
  for (std::size_t i = 0; i < set.grid().size(); ++i) {
    const auto cfg = set.grid().config_at(i);
    const auto n = static_cast<long long>(cfg[0]);
    CHECK(std::abs(set.amplitude(Branch::aa, cfg)) <= std::abs(field.amplitude_or_zero(n)) + 1e-15);
    CHECK(std::abs(set.amplitude(Branch::ab, cfg)) <= std::abs(field.amplitude_or_zero(n - 1)) + 1e-15);
    CHECK(std::abs(set.amplitude(Branch::bb, cfg)) <= std::abs(field.amplitude_or_zero(n - 2)) + 1e-15);
  }
}

TEST_CASE("symmetric trace agrees with the dense amplitude set") {
  for (Convention conv : {Convention::consistent, Convention::paper_literal}) {
    for (std::size_t m : {2u, 3u}) {
      const std::vector<FieldDistribution> fields(m, FieldDistribution::coherent(1.5));
      const ClosedFormEvolution evolution(fields, conv);
      CHECK(evolution.uses_symmetric_trace());
      const std::vector<double> gts{0.0, 0.9, 2.6};
      const auto traced = evolution.traced(gts);
      for (std::size_t g = 0; g < gts.size(); ++g) {
        const auto set = evolution.at(gts[g]);
        Eigen::Matrix4cd dense = Eigen::Matrix4cd::Zero();
        double excited = 0.0;
        for (const auto& e : set.entries()) {
          const Eigen::Vector4cd v(e.aa, e.ab, e.ba, e.bb);
          dense += v * v.adjoint();
          excited += std::norm(e.aa);
        }
        CHECK((traced[g].rho - dense).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(traced[g].excited == doctest::Approx(excited).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distinct fields use the dense path") {
  const std::vector<FieldDistribution> fields{FieldDistribution::coherent(1.0), FieldDistribution::fock(2)};
  const ClosedFormEvolution evolution(fields, Convention::consistent);
  CHECK_FALSE(evolution.uses_symmetric_trace());
  const std::vector<double> gts{0.0};
  const auto traced = evolution.traced(gts);
  CHECK(std::abs(traced[0].rho(0, 0) - 1.0) < 1e-12);
}

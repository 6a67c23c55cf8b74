#include "doctest.h"

#include <cmath>
#include <fstream>
#include <set>

#include "support/reference.hpp"
#include "tcm/errors.hpp"
#include "tcm/fock_field.hpp"

using namespace tcm;

TEST_CASE("truncation window validation") {
  CHECK(TruncationWindow(2, 5).size() == 4);
  CHECK(TruncationWindow(3, 3).contains(3));
  CHECK_FALSE(TruncationWindow(3, 3).contains(2));
  CHECK_THROWS_AS(TruncationWindow(5, 2), ConfigurationError);
}

TEST_CASE("coherent amplitudes") {
  SUBCASE("vacuum") {
    const auto c = coherent_amplitudes(0.0, {0, 0});
    REQUIRE(c.size() == 1);
    CHECK(std::abs(c[0] - Complex(1.0)) < 1e-15);
  }
  SUBCASE("mean 1 against direct evaluation") {
    const auto c = coherent_amplitudes(1.0, {0, 10});
    for (int n = 0; n <= 10; ++n) {
      const double direct = std::exp(-0.5) / std::sqrt(std::tgamma(n + 1.0));
      CHECK(c[static_cast<std::size_t>(n)].real() == doctest::Approx(direct).epsilon(1e-13));
      CHECK(c[static_cast<std::size_t>(n)].imag() == 0.0);
    }
    CHECK(c[0].real() == doctest::Approx(0.60653).epsilon(1e-5));
    CHECK(c[2].real() == doctest::Approx(0.42888).epsilon(1e-5));
  }
  SUBCASE("mean 5 tail bound") {
    const auto c = coherent_amplitudes(5.0, {0, 30});
    double total = 0.0;
    for (auto x : c) total += std::norm(x);
    CHECK(total >= 1.0 - 1e-12);
  }
  SUBCASE("large mean stays finite") {
    const auto c = coherent_amplitudes(400.0, {300, 500});
    for (auto x : c) CHECK(std::isfinite(x.real()));
  }
  CHECK_THROWS_AS(coherent_amplitudes(-1.0, {0, 3}), ConfigurationError);
}

TEST_CASE("default window") {
  const auto w0 = default_window(0.0);
  CHECK(w0.n_min == 0);
  CHECK(poisson_coverage(0.0, w0) == doctest::Approx(1.0));

  const auto w25 = default_window(25.0, 6.0, 1e-12);
  CHECK(w25.n_min == 0);
  CHECK(w25.n_max >= 55);

  for (double mean : {0.5, 2.5, 5.0, 15.0, 50.0, 200.0}) {
    const auto w = default_window(mean);
    CHECK(poisson_coverage(mean, w) >= 1.0 - 1e-12);
    const auto field = FieldDistribution::coherent(mean);
    CHECK(field.norm() >= 1.0 - 1e-12);
    CHECK(field.norm() <= 1.0 + 1e-15);
  }
  // A large mean keeps a lower edge away from zero.
  CHECK(default_window(400.0).n_min > 0);
}

TEST_CASE("fock and custom distributions") {
  const auto f = FieldDistribution::fock(3);
  CHECK(f.kind() == FieldKind::fock);
  CHECK(f.window() == TruncationWindow(3, 3));
  CHECK(f.at(3) == Complex(1.0));
  CHECK_THROWS_AS(f.at(2), std::out_of_range);
  CHECK(f.amplitude_or_zero(2) == Complex{});
  CHECK(f.amplitude_or_zero(-1) == Complex{});

  const auto c = FieldDistribution::custom({Complex(1.0), Complex(0.0, 1.0)});
  CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(c.at(1) - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(c.warnings().size() == 1);
  CHECK(c.mean() == doctest::Approx(0.5));

  const auto exact = FieldDistribution::custom({Complex(0.6), Complex(0.8)});
  CHECK(exact.warnings().empty());
  CHECK_THROWS_AS(FieldDistribution::custom({}), ConfigurationError);
  CHECK_THROWS_AS(FieldDistribution::custom({Complex{}, Complex{}}), ConfigurationError);
}

TEST_CASE("custom distribution file") {
  const auto path = std::filesystem::temp_directory_path() / "tcm_custom_field.txt";
  {
    std::ofstream out(path);
    out << "# two-photon superposition\n0.6\n\n0 0.8\n";
  }
  const auto field = load_custom_distribution(path);
  CHECK(field.window().n_max == 1);
  CHECK(field.at(0).real() == doctest::Approx(0.6));
  CHECK(field.at(1).imag() == doctest::Approx(0.8));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_custom_distribution(path), ConfigurationError);
}

TEST_CASE("enumerate configs") {
  const std::vector<TruncationWindow> w{{0, 2}, {0, 1}};
  const auto configs = enumerate_configs(w);
  REQUIRE(configs.size() == 6);
  CHECK(configs.front() == FockConfig{0, 0});
  CHECK(configs[1] == FockConfig{0, 1});
  CHECK(configs.back() == FockConfig{2, 1});

  const std::vector<TruncationWindow> single{{3, 3}};
  CHECK(enumerate_configs(single).size() == 1);

  const std::vector<TruncationWindow> cube(3, TruncationWindow{0, 1});
  const auto all = enumerate_configs(cube);
  CHECK(all.size() == 8);
  CHECK(std::set<FockConfig>(all.begin(), all.end()).size() == 8);

  CHECK_THROWS_AS(enumerate_configs(std::span<const TruncationWindow>{}), ConfigurationError);
}

TEST_CASE("config grid indexing matches enumeration") {
  const ConfigGrid grid({{1, 3}, {0, 2}, {2, 4}});
  const std::vector<TruncationWindow> w{{1, 3}, {0, 2}, {2, 4}};
  const auto configs = enumerate_configs(w);
  REQUIRE(grid.size() == configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    CHECK(grid.index_of(configs[i]) == i);
    CHECK(grid.config_at(i) == configs[i]);
  }
  CHECK_FALSE(grid.index_of(FockConfig{0, 0, 2}).has_value());
}

TEST_CASE("joint weight") {
  const std::vector<FieldDistribution> focks{FieldDistribution::fock(2), FieldDistribution::fock(2)};
  CHECK(joint_weight(FockConfig{2, 2}, focks) == Complex(1.0));
  CHECK_THROWS_AS(joint_weight(FockConfig{2, 3}, focks), std::out_of_range);

  const std::vector<FieldDistribution> coh{FieldDistribution::coherent(1.0), FieldDistribution::coherent(1.0)};
  CHECK(joint_weight(FockConfig{0, 1}, coh).real() == doctest::Approx(0.36788).epsilon(1e-5));

  // Product measure over the full grid.
  const std::vector<FieldDistribution> mixed{FieldDistribution::coherent(2.0), FieldDistribution::coherent(0.5)};
  const std::vector<TruncationWindow> w{mixed[0].window(), mixed[1].window()};
  double total = 0.0;
  for (const auto& cfg : enumerate_configs(w)) total += std::norm(joint_weight(cfg, mixed));
  CHECK(total >= std::pow(1.0 - 1e-12, 2));
  CHECK(total <= 1.0 + 1e-14);
}

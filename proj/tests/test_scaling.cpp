#include <catch_amalgamated.hpp>

#include "xychain/scaling.hpp"

using namespace xychain;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

/// 4 gamma r^N / (b (1 - r^{2N})), r = (1 - gamma)/b: the lattice-sum difference in closed form.
double d1_closed(double gamma, int n) {
  const long double b = std::sqrt(1.0L - static_cast<long double>(gamma) * gamma);
  const long double r = (1.0L - gamma) / b;
  const long double rn = std::pow(r, static_cast<long double>(n));
  return static_cast<double>(4.0L * gamma * rn / (b * (1.0L - rn * rn)));
}

int multiplicity(int n, int rho, double g) {
  int count = 0;
  for (int k = 0; k < n; ++k) count += std::abs(momentum_cos<double>(k, rho, n) - g) < 1e-12;
  return count;
}

}  // namespace

TEST_CASE("XX vacua are piecewise linear") {
  const double step = 1e-4;
  for (int n : {3, 4, 5, 8}) {
    const auto kinks = forerunner_scan(make_params(n, 0.0, 0.0));
    for (int i = 0; i <= 200; ++i) {
      const double g = -1.9 + 3.8 * i / 200.0;
      bool clear = true;
      for (const auto& f : kinks) clear = clear && std::abs(f.g_star - g) > 10 * step;
      if (!clear) continue;
      for (int rho : {-1, 1}) {
        const auto d2 = d2_vacuum(make_params(n, 0.0, g), rho, step);
        CHECK(std::abs(d2.value) < 1e-6);
        CHECK_FALSE(d2.near_kink);
      }
    }
  }
}

TEST_CASE("XX kinks have slope jumps of 2/N per cosine") {
  const double h = 1e-6;
  for (int n : {4, 5, 6, 9}) {
    for (int rho : {-1, 1}) {
      for (double c : vacuum_kinks(n, rho, 0.0)) {
        const auto p = make_params(n, 0.0, c);
        const double e0 = vacuum_energy_density(p, rho);
        const double right = (vacuum_energy_density(p.with_field(c + h), rho) - e0) / h;
        const double left = (e0 - vacuum_energy_density(p.with_field(c - h), rho)) / h;
        CHECK_THAT(left - right, WithinAbs(2.0 / n * multiplicity(n, rho, c), 1e-8));
        CHECK(d2_vacuum(p, rho).near_kink);
      }
    }
  }
}

TEST_CASE("second derivative at the critical field") {
  const double gamma = 1.0 / 3.0;
  const double at6 = d2_vacuum(make_params(6, gamma, 1.0), 1).value;
  const double at24 = d2_vacuum(make_params(24, gamma, 1.0), 1).value;
  CHECK(at24 < 0.0);
  CHECK(std::abs(at24) > std::abs(at6));
  for (int n : {6, 10, 24, 54, 100}) {
    const auto fd = d2_vacuum(make_params(n, gamma, 1.0), 1);
    CHECK_FALSE(fd.near_kink);
    CHECK_THAT(fd.value, WithinRel(d2_at_unity(gamma, n), 1e-3));
  }
  for (int n = 18; n <= 320; n += 2) CHECK(d2_at_unity(gamma, n) < 0.0);
  CHECK_THROWS_AS(d2_at_unity(gamma, 7), ParameterError);
  CHECK_THROWS_AS(d2_at_unity(0.0, 8), ParameterError);
  // minus sector, even N: single momenta at cos = +-1
  CHECK(d2_vacuum(make_params(6, gamma, 1.0), -1).near_kink);
}

TEST_CASE("slope of the vacua difference at the zero crossing") {
  const double gamma = 1.0 / 3.0;
  for (int n = 5; n <= 101; n += 2) {
    const double value = d1_diff_at_sqrt(gamma, n);
    CHECK(value > 0.0);
    CHECK_THAT(value, WithinRel(d1_closed(gamma, n), 1e-4));
    CHECK_THAT(d1_diff_at_sqrt_reduced(gamma, n), WithinAbs(value, 1e-12));
  }
  for (int n : {4, 6, 12, 30}) CHECK_THAT(d1_diff_at_sqrt(gamma, n), WithinRel(d1_closed(gamma, n), 1e-9));
  CHECK(d1_diff_at_sqrt(gamma, 1001) < d1_diff_at_sqrt(gamma, 11));
  CHECK(d1_diff_at_sqrt(gamma, 1001) < 1e-2);

  for (double gm : {0.2, 1.0 / 3.0, 0.8}) {
    const double root = std::sqrt(1.0 - gm * gm);
    for (int n : {5, 6, 7, 10}) {
      const double h = 1e-5;
      const auto p = make_params(n, gm, root);
      const double fd = (vacua_difference(p.with_field(root + h)) - vacua_difference(p.with_field(root - h))) / (2 * h);
      CHECK_THAT(d1_diff_at_sqrt(gm, n), WithinAbs(fd, 1e-6));
    }
  }
  CHECK_THROWS_AS(d1_diff_at_sqrt(1.0, 5), ParameterError);
  CHECK_THROWS_AS(d1_diff_at_sqrt_reduced(0.5, 6), ParameterError);
}

TEST_CASE("vacua gap at unit field") {
  for (int n : {4, 5, 10, 11, 100}) {
    const double plus = gap_at_unity(1.0 / 3.0, n, 1);
    CHECK(plus > 0.0);
    CHECK_THAT(gap_at_unity(1.0 / 3.0, n, -1), WithinAbs(plus, 1e-12));
  }
  std::vector<ScalingPoint> points;
  for (int n = 100; n <= 1000; n += 100) points.push_back({double(n), gap_at_unity(1.0 / 3.0, n)});
  const auto fit = fit_scaling(points, ScalingModel::power_law, 2.0);
  CHECK_THAT(fit.coefficient, WithinRel(kPi / 6.0, 0.05));
}

TEST_CASE("XX gap at a forerunner") {
  for (int n : {8, 13, 40}) {
    for (int ell = 1; 4 * ell < n; ++ell) CHECK(xx_gap_at_forerunner(ell, n) >= 0.0);
  }
  // direct two-lattice sum at N = 8, l = 1
  const double g = std::cos(kPi / 4);
  double minus = 0.0, plus = 0.0;
  for (int k = 0; k < 8; ++k) {
    minus += std::abs(std::cos(2 * kPi * k / 8) - g);
    plus += std::abs(std::cos(2 * kPi * k / 8 + kPi / 8) - g);
  }
  CHECK_THAT(xx_gap_at_forerunner(1, 8), WithinAbs(std::abs(plus - minus) / 8, 1e-15));
  CHECK_THROWS_AS(xx_gap_at_forerunner(2, 8), ParameterError);
  CHECK_THROWS_AS(xx_gap_at_forerunner(0, 8), ParameterError);
}

TEST_CASE("crossing jump") {
  for (int n = 4; n <= 64; ++n) {
    for (int m = 0; m < n; ++m) {
      CHECK(crossing_jump_exact(m, n) == Rational(-2, n));
      CHECK(Rational(n, 1) * crossing_jump_exact(m, n) == Rational(-2, 1));
      CHECK(crossing_jump(m, n) == -2.0 / n);
      // N * fl(-2/N) is off by one ulp for N = 49
      CHECK(std::abs(n * crossing_jump(m, n) + 2.0) <= 4.5e-16);
    }
  }
  // the numerical ground-state slope drops across every crossing
  const int n = 8;
  const double h = 1e-7;
  for (int m = 0; m < n; ++m) {
    const double gc = xx_level_crossing(m, n);
    auto slope = [n, h](double g) {
      return (xx_ground_state(g + h, n).energy - xx_ground_state(g - h, n).energy) / (2 * h);
    };
    CHECK_THAT(slope(gc + 1e-4) - slope(gc - 1e-4), WithinAbs(crossing_jump(m, n), 1e-6));
  }
  CHECK_THROWS_AS(crossing_jump(8, 8), ParameterError);
  CHECK_THROWS_AS(crossing_jump(-1, 8), ParameterError);
}

TEST_CASE("vacua crossings") {
  for (int n = 3; n <= 40; ++n) {
    const auto roots = find_vacua_crossings(make_params(n, 0.0, 0.0));
    REQUIRE(roots.size() == static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
      CHECK_THAT(roots[m].g, WithinAbs(xx_level_crossing(m, n), 1e-10));
      // the winner alternates: parity of the ground state flips at every crossing
      if (m > 0 && m < n - 1) CHECK(roots[m].winner_above == -roots[m - 1].winner_above);
    }
    // above g = 1 both XX vacua equal -g
    CHECK(roots.back().winner_above == 0);
  }
  const auto roots = find_vacua_crossings(make_params(4, 1.0 / 3.0, 0.0));
  const double root = 2.0 * std::sqrt(2.0) / 3.0;
  auto has = [&roots](double g) {
    return std::any_of(roots.begin(), roots.end(), [g](const auto& r) { return std::abs(r.g - g) < 1e-10; });
  };
  CHECK(has(root));
  CHECK(has(-root));
  for (const auto& r : roots) {
    const double above = vacua_difference(make_params(4, 1.0 / 3.0, r.g + 1e-6));
    CHECK(r.winner_above == (above > 0 ? 1 : -1));
  }
}

TEST_CASE("forerunner scan") {
  for (int n : {4, 5, 6, 7, 12}) {
    std::vector<double> kinks;
    for (const auto& f : forerunner_scan(make_params(n, 1.0 / 3.0, 0.0))) {
      if (f.origin == ForerunnerOrigin::single_fermion_kink) {
        kinks.push_back(f.g_star);
        REQUIRE(f.momentum.has_value());
        CHECK(classify_momenta(n, f.sector_rho).is_single(*f.momentum));
        CHECK(momentum_cos<double>(*f.momentum, f.sector_rho, n) == f.g_star);
      } else {
        CHECK_FALSE(f.momentum.has_value());
        CHECK(std::abs(vacua_difference(make_params(n, 1.0 / 3.0, f.g_star))) < 1e-12);
      }
    }
    REQUIRE(kinks.size() == 2);
    CHECK(kinks[0] == -1.0);
    CHECK(kinks[1] == 1.0);
  }
  const auto xx = forerunner_scan(make_params(4, 0.0, 0.0));
  const std::vector<double> expected{-1.0, -std::sqrt(0.5), 0.0, std::sqrt(0.5), 1.0};
  REQUIRE(xx.size() == expected.size());
  for (std::size_t i = 0; i < xx.size(); ++i) CHECK_THAT(xx[i].g_star, WithinAbs(expected[i], 1e-15));
  for (int n = 3; n <= 20; ++n) CHECK(forerunner_scan(make_params(n, 0.0, 0.0)).size() == static_cast<std::size_t>(n + 1));
}

TEST_CASE("scaling fits") {
  std::vector<ScalingPoint> logs, powers;
  for (int n : {10, 20, 40, 80, 160}) {
    logs.push_back({double(n), 3.0 - 2.0 * std::log(n)});
    powers.push_back({double(n), 5.0 / (double(n) * n)});
  }
  const auto a = fit_scaling(logs, ScalingModel::log_law);
  CHECK_THAT(a.coefficient, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(a.intercept, WithinAbs(3.0, 1e-12));
  CHECK(a.residual < 1e-12);
  const auto b = fit_scaling(powers, ScalingModel::power_law, 2.0);
  CHECK_THAT(b.coefficient, WithinRel(5.0, 1e-12));
  CHECK(b.residual < 1e-15);
  CHECK(b.exponent_or_base == 2.0);

  CHECK_THROWS_AS(fit_scaling(std::span(logs).first(3), ScalingModel::log_law), ParameterError);
  CHECK_THROWS_AS(fit_scaling(powers, ScalingModel::power_law), ParameterError);
  logs[1].n = logs[0].n;
  CHECK_THROWS_AS(fit_scaling(logs, ScalingModel::log_law), ParameterError);
}

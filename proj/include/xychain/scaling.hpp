#pragma once

// Derivatives of the sector vacua, forerunner detection and finite-size
// scaling of the vacuum gaps.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "xychain/analytic.hpp"
#include "xychain/model.hpp"

namespace xychain {

// ---------------------------------------------------------------------------
// Kinks and second differences

/// Fields at which the vacuum of sector rho has a kink: the single-momentum
/// cosines for gamma > 0, every lattice cosine for gamma = 0. Sorted, unique.
template <typename Scalar>
std::vector<Scalar> vacuum_kinks(int n_sites, int rho, Scalar gamma) {
  std::vector<Scalar> kinks;
  const MomentumOrbits orbits = classify_momenta(n_sites, rho);
  for (int k = 0; k < n_sites; ++k) {
    if (gamma > Scalar(0) && !orbits.is_single(k)) continue;
    kinks.push_back(momentum_cos<Scalar>(k, rho, n_sites));
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end(),
                          [](Scalar a, Scalar b) { return std::abs(a - b) <= Scalar(1e-12); }),
              kinks.end());
  return kinks;
}

template <typename Scalar>
struct SecondDifference {
  Scalar value;
  bool near_kink;  ///< a kink of the vacuum lies within 2*step of g
};

/// [E(g+h) - 2E(g) + E(g-h)] / h^2 of the sector-rho vacuum.
template <typename Scalar>
SecondDifference<Scalar> d2_vacuum(const ChainParamsT<Scalar>& p, int rho, Scalar step = Scalar(1e-4)) {
  p.validate();
  if (!(step > Scalar(0))) throw ParameterError("step must be positive");
  const Scalar g = p.field_g;
  const Scalar plus = vacuum_energy_density(p.with_field(g + step), rho);
  const Scalar mid = vacuum_energy_density(p, rho);
  const Scalar minus = vacuum_energy_density(p.with_field(g - step), rho);
  bool near = false;
  for (Scalar kink : vacuum_kinks(p.n_sites, rho, p.gamma)) {
    if (std::abs(kink - g) <= Scalar(2) * step) near = true;
  }
  return {(plus - Scalar(2) * mid + minus) / (step * step), near};
}

/// Second difference of the ground state min(E^(-), E^(+)).
template <typename Scalar>
Scalar d2_ground_state(const ChainParamsT<Scalar>& p, Scalar step = Scalar(1e-4)) {
  const Scalar g = p.field_g;
  return (ground_state_energy(p.with_field(g + step)) - Scalar(2) * ground_state_energy(p) +
          ground_state_energy(p.with_field(g - step))) /
         (step * step);
}

// ---------------------------------------------------------------------------
// Closed-form sums at special fields

namespace detail {
inline void check_size(int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
}
}  // namespace detail

/// d^2 E_vac^(+) / dg^2 at g = 1 for even N:
/// -(gamma^2/N) sum_k (1+c)^{3/2} / (|s| [1 + gamma^2 + c (gamma^2 - 1)]^{3/2}),
/// c, s = cos, sin of (2 pi k + pi) / N.
template <typename Scalar>
Scalar d2_at_unity(Scalar gamma, int n_sites) {
  detail::check_size(n_sites);
  if (n_sites % 2 != 0) throw ParameterError("d2_at_unity needs an even number of sites");
  if (!(gamma > Scalar(0) && gamma <= Scalar(1))) {
    throw ParameterError("d2_at_unity needs 0 < gamma <= 1");
  }
  const Scalar g2 = gamma * gamma;
  Scalar sum = 0;
  for (int k = 0; k < n_sites; ++k) {
    const Scalar c = momentum_cos<Scalar>(k, +1, n_sites);
    const Scalar s = std::abs(momentum_sin<Scalar>(k, +1, n_sites));
    const Scalar denom = Scalar(1) + g2 + c * (g2 - Scalar(1));
    sum += std::pow(Scalar(1) + c, Scalar(1.5)) / (s * std::pow(denom, Scalar(1.5)));
  }
  return -g2 / static_cast<Scalar>(n_sites) * sum;
}

/// Large-N expansion -(1/(gamma pi)) [3 + log(N/8 - 1/2)] - gamma^2 / (2 (1+gamma^2)^{3/2}).
template <typename Scalar>
Scalar d2_at_unity_asymptote(Scalar gamma, int n_sites) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar N = static_cast<Scalar>(n_sites);
  return -(Scalar(3) + std::log(N / Scalar(8) - Scalar(0.5))) / (gamma * pi) -
         Scalar(0.5) * gamma * gamma / std::pow(Scalar(1) + gamma * gamma, Scalar(1.5));
}

/// d E_vac^diff / dg at g = sqrt(1 - gamma^2):
/// (gamma^2 / (N b)) sum_k [1/(1 - b cos(2 pi k/N)) - 1/(1 - b cos(2 pi k/N + pi/N))], b = sqrt(1-gamma^2).
template <typename Scalar>
Scalar d1_diff_at_sqrt(Scalar gamma, int n_sites) {
  detail::check_size(n_sites);
  if (!(gamma > Scalar(0) && gamma < Scalar(1))) {
    throw ParameterError("d1_diff_at_sqrt needs 0 < gamma < 1");
  }
  // The two lattice sums agree to O(r^N), r = (1 - gamma)/b: accumulate in
  // extended precision with Neumaier compensation.
  using Acc = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
  const Acc b = std::sqrt(Acc(1) - Acc(gamma) * Acc(gamma));
  Acc sum = 0, carry = 0;
  for (int k = 0; k < n_sites; ++k) {
    const Acc term = Acc(1) / (Acc(1) - b * momentum_cos<Acc>(k, -1, n_sites)) -
                     Acc(1) / (Acc(1) - b * momentum_cos<Acc>(k, +1, n_sites));
    const Acc t = sum + term;
    carry += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return static_cast<Scalar>(Acc(gamma) * Acc(gamma) / (static_cast<Acc>(n_sites) * b) * (sum + carry));
}

/// Odd-N form (1/N)(gamma^2/b) [2b/gamma^2 + 4 sum_{k=1}^{(N-1)/2} b c_k / (1 - c_k^2 b^2)].
template <typename Scalar>
Scalar d1_diff_at_sqrt_reduced(Scalar gamma, int n_sites) {
  detail::check_size(n_sites);
  if (n_sites % 2 == 0) throw ParameterError("reduced form needs an odd number of sites");
  if (!(gamma > Scalar(0) && gamma < Scalar(1))) {
    throw ParameterError("d1_diff_at_sqrt needs 0 < gamma < 1");
  }
  const Scalar g2 = gamma * gamma;
  const Scalar b = std::sqrt(Scalar(1) - g2);
  Scalar sum = Scalar(2) * b / g2;
  for (int k = 1; k <= (n_sites - 1) / 2; ++k) {
    const Scalar c = momentum_cos<Scalar>(k, -1, n_sites);
    sum += Scalar(4) * c * b / (Scalar(1) - c * c * (Scalar(1) - g2));
  }
  return g2 / (static_cast<Scalar>(n_sites) * b) * sum;
}

/// |E_vac^diff| at g = +1 (side = +1) or g = -1 (side = -1).
template <typename Scalar>
Scalar gap_at_unity(Scalar gamma, int n_sites, int side = +1) {
  detail::check_size(n_sites);
  if (!(gamma > Scalar(0) && gamma <= Scalar(1))) throw ParameterError("gap_at_unity needs 0 < gamma <= 1");
  if (side != 1 && side != -1) throw ParameterError("side must be +1 or -1");
  return std::abs(vacua_difference(ChainParamsT<Scalar>{n_sites, gamma, static_cast<Scalar>(side), Scalar(1)}));
}

/// |E_vac^diff| of the XX chain at g_l = cos(2 pi l / N), 0 < l < N/4.
template <typename Scalar = double>
Scalar xx_gap_at_forerunner(int ell, int n_sites) {
  detail::check_size(n_sites);
  if (ell <= 0 || 4 * ell >= n_sites) {
    throw ParameterError("forerunner index must satisfy 0 < l < N/4");
  }
  const Scalar g = momentum_cos<Scalar>(ell, -1, n_sites);
  return std::abs(vacua_difference(ChainParamsT<Scalar>{n_sites, Scalar(0), g, Scalar(1)}));
}

/// Jump of dE_gs/dg across the XX crossing g_c(n), exactly: the slope drops
/// from 1 - 2n/N to 1 - 2(n+1)/N.
inline Rational crossing_jump_exact(int n, int n_sites) {
  detail::check_size(n_sites);
  if (n < 0 || n > n_sites - 1) throw ParameterError("crossing index outside [0, N-1]");
  return Rational(n_sites - 2 * (n + 1), n_sites) + Rational(-(n_sites - 2 * n), n_sites);
}

/// crossing_jump_exact rounded once to Scalar.
template <typename Scalar = double>
Scalar crossing_jump(int n, int n_sites) {
  return crossing_jump_exact(n, n_sites).to<Scalar>();
}

// ---------------------------------------------------------------------------
// Vacua crossings and forerunners

template <typename Scalar>
struct VacuaCrossing {
  Scalar g;
  int winner_above;  ///< sector whose vacuum is lower just above g; 0 if they stay degenerate
};

/// Roots of E_vac^diff in [-1, 1]. Sign changes are bracketed on 4N points
/// uniform in arccos(g) and refined by bisection to `tolerance`; grid points
/// where |E_vac^diff| <= zero_band count as roots directly.
template <typename Scalar>
std::vector<VacuaCrossing<Scalar>> find_vacua_crossings(const ChainParamsT<Scalar>& p,
                                                        Scalar tolerance = Scalar(1e-13),
                                                        Scalar zero_band = Scalar(1e-14)) {
  p.validate();
  const int count = 4 * p.n_sites;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  auto f = [&p](Scalar g) { return vacua_difference(p.with_field(g)); };
  auto sign = [zero_band](Scalar v) { return std::abs(v) <= zero_band ? 0 : (v > Scalar(0) ? 1 : -1); };
  auto winner_for = [](int s) { return s > 0 ? 1 : -1; };  // E^- - E^+ > 0: plus wins

  std::vector<Scalar> grid(static_cast<std::size_t>(count));
  std::vector<Scalar> value(grid.size());
  for (int i = 0; i < count; ++i) {
    grid[i] = (i == 0) ? Scalar(-1) : (i == count - 1) ? Scalar(1)
              : -std::cos(pi * static_cast<Scalar>(i) / static_cast<Scalar>(count - 1));
    value[i] = f(grid[i]);
  }

  std::vector<VacuaCrossing<Scalar>> roots;
  for (int i = 0; i < count; ++i) {
    const int si = sign(value[i]);
    if (si == 0) {
      int above = 0;
      for (int j = i + 1; j < count && above == 0; ++j) above = sign(value[j]);
      roots.push_back({grid[i], above == 0 ? 0 : winner_for(above)});
      continue;
    }
    if (i + 1 < count && si * sign(value[i + 1]) < 0) {
      Scalar lo = grid[i], hi = grid[i + 1];
      while (hi - lo > tolerance) {
        const Scalar mid = Scalar(0.5) * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int sm = sign(f(mid));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        (sm == si ? lo : hi) = mid;
      }
      roots.push_back({Scalar(0.5) * (lo + hi), winner_for(-si)});
    }
  }
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](const auto& a, const auto& b) { return std::abs(a.g - b.g) <= Scalar(1e-12); }),
              roots.end());
  return roots;
}

enum class ForerunnerOrigin { single_fermion_kink, vacua_crossing };

inline const char* to_string(ForerunnerOrigin origin) {
  return origin == ForerunnerOrigin::single_fermion_kink ? "single_fermion_kink" : "vacua_crossing";
}

template <typename Scalar>
struct ForerunnerPoint {
  Scalar g_star;
  ForerunnerOrigin origin;
  std::optional<int> momentum;
  /// Sector of the kinked vacuum; for vacua crossings, the sector that wins above g_star.
  int sector_rho;
};

/// gamma > 0: the single-momentum kinks (g = +-1) plus the vacua crossings in
/// [-1, 1]. gamma = 0: the N+1 distinct lattice cosines of both sectors.
template <typename Scalar>
std::vector<ForerunnerPoint<Scalar>> forerunner_scan(const ChainParamsT<Scalar>& p) {
  p.validate();
  std::vector<ForerunnerPoint<Scalar>> points;
  auto seen = [&points](Scalar g) {
    return std::any_of(points.begin(), points.end(),
                       [g](const auto& q) { return std::abs(q.g_star - g) <= Scalar(1e-12); });
  };
  for (int rho : {-1, +1}) {
    const MomentumOrbits orbits = classify_momenta(p.n_sites, rho);
    for (int k = 0; k < p.n_sites; ++k) {
      if (p.gamma > Scalar(0) && !orbits.is_single(k)) continue;
      const Scalar g = momentum_cos<Scalar>(k, rho, p.n_sites);
      if (!seen(g)) points.push_back({g, ForerunnerOrigin::single_fermion_kink, k, rho});
    }
  }
  if (p.gamma > Scalar(0)) {
    for (const auto& root : find_vacua_crossings(p)) {
      points.push_back({root.g, ForerunnerOrigin::vacua_crossing, std::nullopt, root.winner_above});
    }
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.g_star < b.g_star; });
  return points;
}

// ---------------------------------------------------------------------------
// Asymptotic-law fits

enum class ScalingModel { log_law, power_law };

const char* to_string(ScalingModel model);

struct ScalingPoint {
  double n;
  double value;
};

/// value = intercept + coefficient * log N (log_law), or
/// value = coefficient * N^{-p} with p fixed (power_law, intercept 0).
struct ScalingFit {
  ScalingModel model = ScalingModel::log_law;
  double exponent_or_base = std::numbers::e;
  double coefficient = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS misfit
  std::size_t points = 0;
};

ScalingFit fit_scaling(std::span<const ScalingPoint> points, ScalingModel model,
                       std::optional<double> power = std::nullopt);

}  // namespace xychain

#pragma once

// Closed-form spectrum of the XY ring: dispersion, Bogoliubov angles, sector
// vacua, the physical-parity rule and full spectrum enumeration, plus the
// isotropic (gamma = 0) specializations.
//
// Energies are densities in units of J per site throughout.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "xychain/model.hpp"

namespace xychain {

namespace detail {

template <typename Scalar>
int sign_of(Scalar x) {
  return (Scalar(0) < x) - (x < Scalar(0));
}

/// sqrt((g - cos x)^2 + gamma^2 sin^2 x) for x = pi m / N, m in Z_2N.
template <typename Scalar>
Scalar mode_magnitude(int m, int n_sites, Scalar gamma, Scalar g) {
  const Scalar d = g - lattice_cos<Scalar>(m, n_sites);
  if (m % n_sites == 0) return std::abs(d);
  const Scalar s = gamma * lattice_sin<Scalar>(m, n_sites);
  return std::sqrt(d * d + s * s);
}

inline void check_momentum(int k, int n_sites) {
  if (k < 0 || k >= n_sites) {
    throw ParameterError("momentum " + std::to_string(k) + " outside [0, " +
                         std::to_string(n_sites) + ")");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-mode quantities

/// |eps_k| = sqrt((cos phi - g)^2 + gamma^2 sin^2 phi), phi = 2 pi (alpha + k) / N.
template <typename Scalar>
Scalar dispersion_magnitude(int k, const ChainParamsT<Scalar>& p, int rho) {
  detail::check_momentum(k, p.n_sites);
  return detail::mode_magnitude<Scalar>(2 * k + twice_alpha(rho), p.n_sites, p.gamma, p.field_g);
}

/// Signed pair dispersion sgn(cos phi - g) |eps_k| with sgn(0) = 0. On single
/// momenta this is exactly cos phi - g.
template <typename Scalar>
Scalar dispersion(int k, const ChainParamsT<Scalar>& p, int rho) {
  const Scalar magnitude = dispersion_magnitude(k, p, rho);
  const Scalar d = momentum_cos<Scalar>(k, rho, p.n_sites) - p.field_g;
  if ((2 * k + twice_alpha(rho)) % p.n_sites == 0) return d;
  return static_cast<Scalar>(detail::sign_of(d)) * magnitude;
}

template <typename Scalar>
struct BogoliubovAngle {
  Scalar theta = Scalar(0);  ///< principal angle in (-pi/2, pi/2]
  int branch_s = 0;          ///< 0 or 1; the rotation angle is theta + s*pi

  Scalar rotation() const { return theta + static_cast<Scalar>(branch_s) * std::numbers::pi_v<Scalar>; }

  /// Diagonal entry of the rotated 2x2 pair block, (-1)^s * eps_k.
  Scalar rotated_energy(Scalar cos_phi, Scalar sin_phi, Scalar gamma, Scalar g) const {
    const Scalar r = rotation();
    return -gamma * sin_phi * std::sin(r) + (cos_phi - g) * std::cos(r);
  }
};

/// theta_k = arctan(gamma sin phi / (g - cos phi)); +pi/2 on a vanishing
/// denominator, 0 on single momenta.
template <typename Scalar>
BogoliubovAngle<Scalar> bogoliubov_angle(int k, const ChainParamsT<Scalar>& p, int rho,
                                         int branch_s = 0) {
  detail::check_momentum(k, p.n_sites);
  if (branch_s != 0 && branch_s != 1) throw ParameterError("branch must be 0 or 1");
  BogoliubovAngle<Scalar> angle;
  angle.branch_s = branch_s;
  if ((2 * k + twice_alpha(rho)) % p.n_sites == 0) return angle;
  const Scalar num = p.gamma * momentum_sin<Scalar>(k, rho, p.n_sites);
  const Scalar den = p.field_g - momentum_cos<Scalar>(k, rho, p.n_sites);
  if (num == Scalar(0)) {
    angle.theta = Scalar(0);
  } else if (den == Scalar(0)) {
    angle.theta = std::numbers::pi_v<Scalar> / 2;
  } else {
    angle.theta = std::atan(num / den);
  }
  return angle;
}

// ---------------------------------------------------------------------------
// Vacua

/// Bogoliubov vacuum of sector rho in the absolute-value gauge,
/// -(1/N) sum_k |eps_k|.
template <typename Scalar>
Scalar vacuum_energy_density(const ChainParamsT<Scalar>& p, int rho) {
  p.validate();
  const int shift = twice_alpha(rho);
  Scalar sum = 0;
  for (int k = 0; k < p.n_sites; ++k) {
    sum += detail::mode_magnitude<Scalar>(2 * k + shift, p.n_sites, p.gamma, p.field_g);
  }
  return -sum / static_cast<Scalar>(p.n_sites);
}

/// E_vac^(-) - E_vac^(+) as one alternating sum over m in Z_2N.
template <typename Scalar>
Scalar vacua_difference(const ChainParamsT<Scalar>& p) {
  p.validate();
  Scalar sum = 0;
  for (int m = 0; m < 2 * p.n_sites; ++m) {
    const Scalar term = detail::mode_magnitude<Scalar>(m, p.n_sites, p.gamma, p.field_g);
    sum += (m % 2 == 0) ? term : -term;
  }
  return -sum / static_cast<Scalar>(p.n_sites);
}

/// Parity rho-bar(g) of the sector Hilbert space on which the absolute-gauge
/// Bogoliubov Hamiltonian of sector rho acts. At |g| = 1 the sign argument
/// vanishes; the vacuum is then taken as physical and (-1)^N is returned.
template <typename Scalar>
int physical_parity(Scalar g, int n_sites, int rho) {
  check_rho(rho);
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  const int vacuum_parity = (n_sites % 2 == 0) ? 1 : -1;
  int sign = 0;
  if (n_sites % 2 == 0) {
    const Scalar arg = Scalar(1) - Scalar((1 - rho) / 2) * g * g;
    sign = detail::sign_of(arg);
  } else {
    sign = -detail::sign_of(Scalar(1) + Scalar(rho) * g);
  }
  return sign == 0 ? vacuum_parity : sign;
}

/// The lower of the two sector vacua.
template <typename Scalar>
Scalar ground_state_energy(const ChainParamsT<Scalar>& p) {
  return std::min(vacuum_energy_density(p, -1), vacuum_energy_density(p, +1));
}

// ---------------------------------------------------------------------------
// Spectrum enumeration

template <typename Scalar>
struct SpectrumLevel {
  Scalar energy_density = Scalar(0);
  int sector_rho = -1;
  std::uint64_t occupation = 0;  ///< bit k set: Bogoliubov mode k occupied
  bool physical = false;

  int fermion_count() const { return std::popcount(occupation); }
};

struct SpectrumOptions {
  std::optional<std::size_t> max_levels;
  int enumeration_cap = 20;
};

inline constexpr int kMaxEnumerationCap = 26;

namespace detail {

inline void check_enumeration(int n_sites, int cap) {
  if (cap < 2 || cap > kMaxEnumerationCap) {
    throw ParameterError("enumeration cap must lie in [2, " + std::to_string(kMaxEnumerationCap) + "]");
  }
  if (n_sites > cap) {
    throw CapacityError("spectrum enumeration needs 2^N states per sector; N = " +
                        std::to_string(n_sites) + " exceeds the cap " + std::to_string(cap));
  }
}

/// All 2^N occupations of one sector with mode energies `mode`, i.e.
/// E(n) = (2/N) sum_k mode_k (n_k - 1/2). Physical iff (-1)^(N+|n|) == target.
template <typename Scalar>
std::vector<SpectrumLevel<Scalar>> fill_sector(const std::vector<Scalar>& mode, int rho,
                                               int target_parity) {
  const int n = static_cast<int>(mode.size());
  const std::uint64_t count = std::uint64_t{1} << n;
  Scalar base = 0;
  for (Scalar e : mode) base += e;
  base = -base / static_cast<Scalar>(n);

  std::vector<Scalar> weight(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) weight[k] = Scalar(2) * mode[k] / static_cast<Scalar>(n);

  std::vector<SpectrumLevel<Scalar>> levels(count);
  levels[0] = {base, rho, 0, false};
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const std::uint64_t rest = mask & (mask - 1);
    const int low = std::countr_zero(mask);
    levels[mask] = {levels[rest].energy_density + weight[low], rho, mask, false};
  }
  for (auto& level : levels) {
    const int parity = ((n + level.fermion_count()) % 2 == 0) ? 1 : -1;
    level.physical = parity == target_parity;
  }
  return levels;
}

template <typename Scalar>
void sort_levels(std::vector<SpectrumLevel<Scalar>>& levels) {
  std::sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) {
    if (a.energy_density != b.energy_density) return a.energy_density < b.energy_density;
    if (a.sector_rho != b.sector_rho) return a.sector_rho < b.sector_rho;
    return a.occupation < b.occupation;
  });
}

}  // namespace detail

/// Levels of one sector in the absolute-value gauge, indexed by occupation.
template <typename Scalar>
std::vector<SpectrumLevel<Scalar>> sector_levels(const ChainParamsT<Scalar>& p, int rho,
                                                 int enumeration_cap = 20) {
  p.validate();
  check_rho(rho);
  detail::check_enumeration(p.n_sites, enumeration_cap);
  std::vector<Scalar> mode(static_cast<std::size_t>(p.n_sites));
  for (int k = 0; k < p.n_sites; ++k) mode[k] = dispersion_magnitude(k, p, rho);
  return detail::fill_sector(mode, rho, physical_parity(p.field_g, p.n_sites, rho));
}

/// Levels of one sector in an arbitrary sign gauge: mode energies
/// (-1)^{s_k} eps_k and physical parity (-1)^{|s|_rho} rho. Ties in the sign
/// of cos phi - g count as +1. The gauge is not validated, so a gauge that
/// breaks s_k == s_kbar yields a (wrong) spectrum rather than an error.
template <typename Scalar>
std::vector<SpectrumLevel<Scalar>> sector_levels_in_gauge(const ChainParamsT<Scalar>& p, int rho,
                                                          const GaugeVector& gauge,
                                                          int enumeration_cap = 20) {
  p.validate();
  check_rho(rho);
  detail::check_enumeration(p.n_sites, enumeration_cap);
  if (gauge.size() != p.n_sites) throw ParameterError("gauge length must equal N");
  const MomentumOrbits orbits = classify_momenta(p.n_sites, rho);
  std::vector<Scalar> mode(static_cast<std::size_t>(p.n_sites));
  for (int k = 0; k < p.n_sites; ++k) {
    const Scalar d = momentum_cos<Scalar>(k, rho, p.n_sites) - p.field_g;
    const Scalar signed_eps = (d < Scalar(0) ? Scalar(-1) : Scalar(1)) * dispersion_magnitude(k, p, rho);
    mode[k] = gauge[k] ? -signed_eps : signed_eps;
  }
  const int target = (gauge.single_weight(orbits) % 2 == 0) ? rho : -rho;
  return detail::fill_sector(mode, rho, target);
}

/// Both sectors, sorted by (energy, sector, occupation), truncated to
/// options.max_levels. Unphysical levels are kept and flagged.
template <typename Scalar>
std::vector<SpectrumLevel<Scalar>> enumerate_spectrum(const ChainParamsT<Scalar>& p,
                                                      const SpectrumOptions& options = {}) {
  auto levels = sector_levels(p, -1, options.enumeration_cap);
  auto plus = sector_levels(p, +1, options.enumeration_cap);
  levels.insert(levels.end(), plus.begin(), plus.end());
  detail::sort_levels(levels);
  if (options.max_levels && levels.size() > *options.max_levels) levels.resize(*options.max_levels);
  return levels;
}

/// Same as enumerate_spectrum but with explicit per-sector gauges.
template <typename Scalar>
std::vector<SpectrumLevel<Scalar>> enumerate_spectrum_in_gauge(const ChainParamsT<Scalar>& p,
                                                               const GaugeVector& gauge_minus,
                                                               const GaugeVector& gauge_plus,
                                                               const SpectrumOptions& options = {}) {
  auto levels = sector_levels_in_gauge(p, -1, gauge_minus, options.enumeration_cap);
  auto plus = sector_levels_in_gauge(p, +1, gauge_plus, options.enumeration_cap);
  levels.insert(levels.end(), plus.begin(), plus.end());
  detail::sort_levels(levels);
  if (options.max_levels && levels.size() > *options.max_levels) levels.resize(*options.max_levels);
  return levels;
}

/// Ascending physical energy densities of a level list.
template <typename Scalar>
std::vector<Scalar> physical_energies(const std::vector<SpectrumLevel<Scalar>>& levels,
                                      std::optional<int> only_sector = std::nullopt) {
  std::vector<Scalar> out;
  for (const auto& level : levels) {
    if (!level.physical) continue;
    if (only_sector && level.sector_rho != *only_sector) continue;
    out.push_back(level.energy_density);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Scalar>
std::vector<Scalar> physical_spectrum(const ChainParamsT<Scalar>& p, int enumeration_cap = 20) {
  SpectrumOptions options;
  options.enumeration_cap = enumeration_cap;
  return physical_energies(enumerate_spectrum(p, options));
}

// ---------------------------------------------------------------------------
// Isotropic (XX) model

/// Signed-gauge XX vacuum energy density; independent of N and rho.
template <typename Scalar>
Scalar xx_vacuum_signed(Scalar g) {
  return g;
}

/// One fermion of momentum k on the signed vacuum, in the sector
/// rho = -(-1)^N that holds one-particle states.
template <typename Scalar>
Scalar xx_one_particle_energy(int k, Scalar g, int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  detail::check_momentum(k, n_sites);
  const int rho = (n_sites % 2 == 0) ? -1 : 1;
  const Scalar c = momentum_cos<Scalar>(k, rho, n_sites);
  return xx_vacuum_signed(g) - Scalar(2) / static_cast<Scalar>(n_sites) * (g - c);
}

/// Lowest level with n fermions, g (1 - 2n/N) - (2/N) sin(n pi/N) / sin(pi/N).
template <typename Scalar>
Scalar xx_lowest_level(int n, Scalar g, int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  if (n < 0 || n > n_sites) {
    throw ParameterError("fermion number " + std::to_string(n) + " outside [0, N]");
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar N = static_cast<Scalar>(n_sites);
  const Scalar ratio = (n == 0 || n == n_sites)
                           ? Scalar(0)
                           : std::sin(static_cast<Scalar>(n) * pi / N) / std::sin(pi / N);
  return g * static_cast<Scalar>(n_sites - 2 * n) / N - Scalar(2) / N * ratio;
}

/// Field where the n- and (n+1)-fermion lowest levels cross.
template <typename Scalar = double>
Scalar xx_level_crossing(int n, int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  if (n < 0 || n > n_sites - 1) {
    throw ParameterError("crossing index " + std::to_string(n) + " outside [0, N-1]");
  }
  if (n == 0) return Scalar(-1);
  if (n == n_sites - 1) return Scalar(1);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar N = static_cast<Scalar>(n_sites);
  return (std::sin(static_cast<Scalar>(n) * pi / N) - std::sin(static_cast<Scalar>(n + 1) * pi / N)) /
         std::sin(pi / N);
}

/// Same crossing as -cos((2n+1) pi/2N) / cos(pi/2N) expanded into
/// (-1)^{n+1} [1 + 2 sum_{m=1}^{n} (-1)^m cos(m pi / N)].
template <typename Scalar = double>
Scalar xx_level_crossing_alternating(int n, int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  if (n < 0 || n > n_sites - 1) {
    throw ParameterError("crossing index " + std::to_string(n) + " outside [0, N-1]");
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar sum = 1;
  for (int m = 1; m <= n; ++m) {
    const Scalar term = Scalar(2) * std::cos(static_cast<Scalar>(m) * pi / static_cast<Scalar>(n_sites));
    sum += (m % 2 == 0) ? term : -term;
  }
  return (n % 2 == 1) ? sum : -sum;
}

template <typename Scalar>
struct XxGroundState {
  Scalar energy;
  int n_fermions;
};

/// Piecewise ground state: n fermions for g in (g_c(n-1), g_c(n)); on a
/// crossing point the lower n is reported.
template <typename Scalar>
XxGroundState<Scalar> xx_ground_state(Scalar g, int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  int n = 0;
  while (n < n_sites && xx_level_crossing<Scalar>(n, n_sites) < g) ++n;
  return {xx_lowest_level(n, g, n_sites), n};
}

}  // namespace xychain

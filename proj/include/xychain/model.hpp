#pragma once

// Parameters, parity sectors, momentum orbits and the Bogoliubov sign gauge.
//
// Momenta are canonical residues 0..N-1. The sector sign rho = +1/-1 fixes the
// Fourier shift alpha = (1 + rho) / 4, which is carried around as the integer
// 2*alpha in {0, 1} so that all index bookkeeping stays in exact arithmetic.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "xychain/errors.hpp"

namespace xychain {

template <typename Scalar>
struct ChainParamsT {
  int n_sites = 2;
  Scalar gamma = Scalar(0);
  Scalar field_g = Scalar(0);
  Scalar coupling_j = Scalar(1);

  void validate() const {
    if (n_sites < 2) {
      throw ParameterError("n_sites must be >= 2, got " + std::to_string(n_sites));
    }
    if (!(gamma >= Scalar(0) && gamma <= Scalar(1))) {
      throw ParameterError("gamma must lie in [0, 1]");
    }
    if (!std::isfinite(static_cast<double>(field_g))) {
      throw ParameterError("field g must be finite");
    }
    if (!(coupling_j > Scalar(0)) || !std::isfinite(static_cast<double>(coupling_j))) {
      throw ParameterError("coupling J must be positive and finite");
    }
  }

  ChainParamsT with_field(Scalar g) const {
    ChainParamsT copy = *this;
    copy.field_g = g;
    return copy;
  }

  template <typename Other>
  ChainParamsT<Other> cast() const {
    return {n_sites, static_cast<Other>(gamma), static_cast<Other>(field_g),
            static_cast<Other>(coupling_j)};
  }
};

using ChainParams = ChainParamsT<double>;

/// Validated construction.
template <typename Scalar>
ChainParamsT<Scalar> make_params(int n_sites, Scalar gamma, Scalar field_g,
                                 Scalar coupling_j = Scalar(1)) {
  ChainParamsT<Scalar> p{n_sites, gamma, field_g, coupling_j};
  p.validate();
  return p;
}

/// Exact rational in lowest terms with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;

  template <typename Scalar>
  Scalar to() const {
    return static_cast<Scalar>(num) / static_cast<Scalar>(den);
  }
};

/// Throws ParameterError unless rho is +1 or -1.
void check_rho(int rho);

/// Fourier gauge alpha = (1 + rho) / 4: 0 for rho = -1, 1/2 for rho = +1.
Rational alpha_of(int rho);

/// 2*alpha as an integer, 0 or 1.
inline int twice_alpha(int rho) {
  check_rho(rho);
  return rho == 1 ? 1 : 0;
}

class ParitySector {
 public:
  explicit ParitySector(int rho) : rho_(rho) { check_rho(rho); }

  int rho() const { return rho_; }
  Rational alpha() const { return alpha_of(rho_); }
  int twice_alpha() const { return xychain::twice_alpha(rho_); }

  friend bool operator==(const ParitySector&, const ParitySector&) = default;

 private:
  int rho_;
};

/// k-bar = (-2 alpha - k) mod N.
int conjugate_momentum(int k, int rho, int n_sites);

struct MomentumOrbits {
  int n_sites = 0;
  int rho = -1;
  std::vector<int> singles;
  /// Two-element orbits, smaller member first, ordered by that member.
  std::vector<std::pair<int, int>> pairs;

  bool is_single(int k) const;
};

MomentumOrbits classify_momenta(int n_sites, int rho);

/// Phase 2 pi (alpha + k) / N, evaluated in one expression from integers.
template <typename Scalar>
Scalar momentum_phase(int k, int rho, int n_sites) {
  return std::numbers::pi_v<Scalar> * static_cast<Scalar>(2 * k + twice_alpha(rho)) /
         static_cast<Scalar>(n_sites);
}

/// cos(pi m / N) for integer m. Reduced by symmetry first, so that values are
/// exact at m = 0, N/2, N and identical for m and -m (a momentum and its conjugate).
template <typename Scalar>
Scalar lattice_cos(int m, int n_sites) {
  const int period = 2 * n_sites;
  int r = ((m % period) + period) % period;
  if (r > n_sites) r = period - r;
  if (2 * r == n_sites) return Scalar(0);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar n = static_cast<Scalar>(n_sites);
  return 2 * r < n_sites ? std::cos(pi * static_cast<Scalar>(r) / n)
                         : -std::cos(pi * static_cast<Scalar>(n_sites - r) / n);
}

/// sin(pi m / N), exactly zero at m = 0, N and odd in m.
template <typename Scalar>
Scalar lattice_sin(int m, int n_sites) {
  const int period = 2 * n_sites;
  int r = ((m % period) + period) % period;
  Scalar sign = Scalar(1);
  if (r > n_sites) {
    r = period - r;
    sign = Scalar(-1);
  }
  if (r == 0 || r == n_sites) return Scalar(0);
  if (2 * r > n_sites) r = n_sites - r;
  return sign * std::sin(std::numbers::pi_v<Scalar> * static_cast<Scalar>(r) / static_cast<Scalar>(n_sites));
}

template <typename Scalar>
Scalar momentum_cos(int k, int rho, int n_sites) {
  return lattice_cos<Scalar>(2 * k + twice_alpha(rho), n_sites);
}

template <typename Scalar>
Scalar momentum_sin(int k, int rho, int n_sites) {
  return lattice_sin<Scalar>(2 * k + twice_alpha(rho), n_sites);
}

/// Binary sign gauge s_k indexed by momentum.
class GaugeVector {
 public:
  GaugeVector() = default;
  explicit GaugeVector(int n_sites) : bits_(static_cast<std::size_t>(n_sites), 0) {}
  explicit GaugeVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  int size() const { return static_cast<int>(bits_.size()); }
  int operator[](int k) const { return bits_[static_cast<std::size_t>(k)]; }
  void set(int k, int value) { bits_[static_cast<std::size_t>(k)] = value ? 1 : 0; }
  void flip(int k) { set(k, 1 - (*this)[k]); }

  /// |s|_rho: the number of flipped single momenta.
  int single_weight(const MomentumOrbits& orbits) const;
  /// s_k == s_kbar on every pair orbit.
  bool satisfies_pair_constraint(const MomentumOrbits& orbits) const;

  friend bool operator==(const GaugeVector&, const GaugeVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Absolute-value gauge s_k(g): 1 where cos(phase) < g, 0 otherwise (ties -> 0).
template <typename Scalar>
GaugeVector sign_gauge(const ChainParamsT<Scalar>& params, int rho) {
  params.validate();
  check_rho(rho);
  GaugeVector s(params.n_sites);
  for (int k = 0; k < params.n_sites; ++k) {
    const Scalar c = momentum_cos<Scalar>(k, rho, params.n_sites);
    s.set(k, c < params.field_g ? 1 : 0);
  }
  return s;
}

}  // namespace xychain

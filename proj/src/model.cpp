#include "xychain/model.hpp"

#include <numeric>

namespace xychain {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) {
    throw ParameterError("zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

void check_rho(int rho) {
  if (rho != 1 && rho != -1) {
    throw ParameterError("sector sign must be +1 or -1, got " + std::to_string(rho));
  }
}

Rational alpha_of(int rho) {
  check_rho(rho);
  return Rational(1 + rho, 4);
}

int conjugate_momentum(int k, int rho, int n_sites) {
  if (n_sites < 2) {
    throw ParameterError("n_sites must be >= 2");
  }
  if (k < 0 || k >= n_sites) {
    throw ParameterError("momentum " + std::to_string(k) + " outside [0, " +
                         std::to_string(n_sites) + ")");
  }
  const int r = (-twice_alpha(rho) - k) % n_sites;
  return r < 0 ? r + n_sites : r;
}

bool MomentumOrbits::is_single(int k) const {
  for (int s : singles) {
    if (s == k) return true;
  }
  return false;
}

MomentumOrbits classify_momenta(int n_sites, int rho) {
  MomentumOrbits orbits;
  orbits.n_sites = n_sites;
  orbits.rho = rho;
  for (int k = 0; k < n_sites; ++k) {
    const int kbar = conjugate_momentum(k, rho, n_sites);
    if (kbar == k) {
      orbits.singles.push_back(k);
    } else if (k < kbar) {
      orbits.pairs.emplace_back(k, kbar);
    }
  }
  return orbits;
}

int GaugeVector::single_weight(const MomentumOrbits& orbits) const {
  int w = 0;
  for (int k : orbits.singles) w += (*this)[k];
  return w;
}

bool GaugeVector::satisfies_pair_constraint(const MomentumOrbits& orbits) const {
  for (const auto& [k, kbar] : orbits.pairs) {
    if ((*this)[k] != (*this)[kbar]) return false;
  }
  return true;
}

}  // namespace xychain

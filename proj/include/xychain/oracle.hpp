#pragma once

// Brute-force exact diagonalization of the 2^N-dimensional XY ring.
//
// Basis convention: bit j of a basis index is 1 when spin j is up (sigma^z =
// +1). Parity is (-1)^(number of zero bits), i.e. of the number of down spins.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "xychain/errors.hpp"
#include "xychain/model.hpp"

namespace xychain {

/// Hard dense-storage cap on N.
inline constexpr int kOracleHardCap = 14;
/// Largest N exercised by the equivalence suite.
inline constexpr int kOracleTestedCap = 12;

/// kOracleHardCap, lowered (never raised) by the XYCHAIN_MAX_N environment variable.
int oracle_cap();

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Real symmetric Hamiltonian in the computational basis, units of J.
template <typename Scalar>
struct DenseSpinOperator {
  int n_sites = 0;
  Scalar coupling_j = Scalar(1);
  DenseMatrix<Scalar> entries;

  Eigen::Index dimension() const { return entries.rows(); }
};

/// H = -J sum_{i in Z_N} [g sz_i + (1+gamma)/2 sx_i sx_{i+1} + (1-gamma)/2 sy_i sy_{i+1}].
///
/// sx sx + sy sy on a bond only flips both spins: with amplitude (1+gamma)/2 -
/// (1-gamma)/2 = gamma when they are parallel and 1 when antiparallel.
template <typename Scalar>
DenseSpinOperator<Scalar> build_hamiltonian(const ChainParamsT<Scalar>& p) {
  p.validate();
  if (p.n_sites > oracle_cap()) {
    throw CapacityError("dense oracle limited to N <= " + std::to_string(oracle_cap()) +
                        ", got " + std::to_string(p.n_sites));
  }
  const int n = p.n_sites;
  const std::uint32_t dim = std::uint32_t{1} << n;
  DenseSpinOperator<Scalar> op;
  op.n_sites = n;
  op.coupling_j = p.coupling_j;
  op.entries = DenseMatrix<Scalar>::Zero(dim, dim);

  for (std::uint32_t b = 0; b < dim; ++b) {
    const int up = std::popcount(b);
    op.entries(b, b) = -p.coupling_j * p.field_g * static_cast<Scalar>(2 * up - n);
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const bool parallel = ((b >> i) & 1u) == ((b >> j) & 1u);
      const std::uint32_t flipped = b ^ (std::uint32_t{1} << i) ^ (std::uint32_t{1} << j);
      op.entries(flipped, b) += -p.coupling_j * (parallel ? p.gamma : Scalar(1));
    }
  }
  return op;
}

/// (-1)^{#down} for every basis state.
Eigen::VectorXi parity_diagonal(int n_sites);

/// max |H P - P H| for diagonal P.
template <typename Scalar>
Scalar parity_commutator_norm(const DenseSpinOperator<Scalar>& op) {
  const Eigen::VectorXi parity = parity_diagonal(op.n_sites);
  Scalar worst = 0;
  for (Eigen::Index b = 0; b < op.dimension(); ++b) {
    for (Eigen::Index a = 0; a < op.dimension(); ++a) {
      const Scalar value = op.entries(a, b) * static_cast<Scalar>(parity(b) - parity(a));
      worst = std::max(worst, std::abs(value));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Dense symmetric eigenvalues

struct JacobiReport {
  int sweeps = 0;
  double off_norm = 0.0;
};

/// Cyclic Jacobi: sweep every (p, q) pair until the off-diagonal Frobenius
/// norm is <= tolerance * ||A||_F. Throws NumericError after max_sweeps.
template <typename Derived>
DenseVector<typename Derived::Scalar> jacobi_eigenvalues(const Eigen::MatrixBase<Derived>& input,
                                                         int max_sweeps = 50,
                                                         double tolerance = 1e-12,
                                                         JacobiReport* report = nullptr) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> a = input;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ParameterError("jacobi_eigenvalues needs a square matrix");

  const Scalar threshold = static_cast<Scalar>(tolerance) * a.norm();
  auto off_norm = [&a, n] {
    Scalar s = 0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < n; ++p)
        if (p != q) s += a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  Scalar off = off_norm();
  while (off > threshold) {
    if (sweep == max_sweeps) {
      throw NumericError("Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a(p, p), a(p, q), a(q, q));
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        a(p, q) = a(q, p) = Scalar(0);
      }
    }
    ++sweep;
    off = off_norm();
  }
  if (report) {
    report->sweeps = sweep;
    report->off_norm = static_cast<double>(off);
  }
  DenseVector<Scalar> values = a.diagonal();
  std::sort(values.data(), values.data() + values.size());
  return values;
}

enum class EigenMethod { automatic, jacobi, tridiagonal };

/// Dimension up to which EigenMethod::automatic uses Jacobi.
inline constexpr Eigen::Index kJacobiMaxDimension = 64;

/// Ascending eigenvalues of a symmetric matrix.
template <typename Derived>
DenseVector<typename Derived::Scalar> symmetric_eigenvalues(const Eigen::MatrixBase<Derived>& m,
                                                            EigenMethod method = EigenMethod::automatic) {
  using Scalar = typename Derived::Scalar;
  if (method == EigenMethod::automatic) {
    method = m.rows() <= kJacobiMaxDimension ? EigenMethod::jacobi : EigenMethod::tridiagonal;
  }
  if (method == EigenMethod::jacobi) return jacobi_eigenvalues(m);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("tridiagonal QR did not converge");
  return solver.eigenvalues();
}

enum class EnergyUnit { density, raw };

/// All eigenvalues ascending, as energy densities (divided by N J) by default.
template <typename Scalar>
std::vector<Scalar> eigen_spectrum(const DenseSpinOperator<Scalar>& op,
                                   EnergyUnit unit = EnergyUnit::density,
                                   EigenMethod method = EigenMethod::automatic) {
  const DenseVector<Scalar> values = symmetric_eigenvalues(op.entries, method);
  std::vector<Scalar> out(values.data(), values.data() + values.size());
  if (unit == EnergyUnit::density) {
    const Scalar scale = static_cast<Scalar>(op.n_sites) * op.coupling_j;
    for (auto& v : out) v /= scale;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parity-resolved spectra

template <typename Scalar>
struct SectorSpectra {
  std::vector<Scalar> even_parity;  ///< P = +1 block, ascending densities
  std::vector<Scalar> odd_parity;   ///< P = -1 block

  std::vector<Scalar> of_sector(int rho) const { return rho == 1 ? even_parity : odd_parity; }

  std::vector<Scalar> merged() const {
    std::vector<Scalar> all;
    all.reserve(even_parity.size() + odd_parity.size());
    std::merge(even_parity.begin(), even_parity.end(), odd_parity.begin(), odd_parity.end(),
               std::back_inserter(all));
    return all;
  }
};

/// Basis indices split by parity, even (P = +1) first.
std::pair<std::vector<int>, std::vector<int>> parity_partition(int n_sites);

/// Largest |H_ab| with a, b in different parity blocks.
template <typename Scalar>
Scalar cross_block_norm(const DenseSpinOperator<Scalar>& op) {
  const auto [even, odd] = parity_partition(op.n_sites);
  Scalar worst = 0;
  for (int b : odd)
    for (int a : even) worst = std::max({worst, std::abs(op.entries(a, b)), std::abs(op.entries(b, a))});
  return worst;
}

/// Diagonalize the two parity blocks of an already-built operator.
template <typename Scalar>
SectorSpectra<Scalar> sector_spectra(const DenseSpinOperator<Scalar>& op,
                                     EigenMethod method = EigenMethod::automatic) {
  if (cross_block_norm(op) > Scalar(1e-12)) {
    throw ConsistencyError("Hamiltonian couples the two parity sectors");
  }
  const auto [even, odd] = parity_partition(op.n_sites);
  const Scalar scale = static_cast<Scalar>(op.n_sites) * op.coupling_j;
  auto block_spectrum = [&](const std::vector<int>& idx) {
    const DenseMatrix<Scalar> block = op.entries(idx, idx);
    const DenseVector<Scalar> values = symmetric_eigenvalues(block, method);
    std::vector<Scalar> out(values.data(), values.data() + values.size());
    for (auto& v : out) v /= scale;
    return out;
  };
  return {block_spectrum(even), block_spectrum(odd)};
}

template <typename Scalar>
SectorSpectra<Scalar> sector_spectra(const ChainParamsT<Scalar>& p,
                                     EigenMethod method = EigenMethod::automatic) {
  return sector_spectra(build_hamiltonian(p), method);
}

// ---------------------------------------------------------------------------
// Magnetization blocks (conserved only at gamma = 0)

/// Basis indices grouped by the number of up spins u = 0..N.
std::vector<std::vector<int>> magnetization_partition(int n_sites);

/// Largest |H_ab| with a and b in different blocks.
template <typename Scalar>
Scalar leakage_norm(const DenseSpinOperator<Scalar>& op, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> label(static_cast<std::size_t>(op.dimension()), -1);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int b : blocks[i]) label[static_cast<std::size_t>(b)] = static_cast<int>(i);
  Scalar worst = 0;
  for (Eigen::Index b = 0; b < op.dimension(); ++b)
    for (Eigen::Index a = 0; a < op.dimension(); ++a)
      if (label[a] != label[b]) worst = std::max(worst, std::abs(op.entries(a, b)));
  return worst;
}

/// Ascending raw eigenvalues of every block; throws if the blocks leak.
template <typename Scalar>
std::vector<std::vector<Scalar>> block_spectra(const DenseSpinOperator<Scalar>& op,
                                               const std::vector<std::vector<int>>& blocks,
                                               EigenMethod method = EigenMethod::automatic) {
  if (leakage_norm(op, blocks) != Scalar(0)) throw ConsistencyError("Hamiltonian couples the given blocks");
  std::vector<std::vector<Scalar>> out;
  out.reserve(blocks.size());
  for (const auto& idx : blocks) {
    const DenseMatrix<Scalar> block = op.entries(idx, idx);
    const DenseVector<Scalar> values = symmetric_eigenvalues(block, method);
    out.emplace_back(values.data(), values.data() + values.size());
  }
  return out;
}

}  // namespace xychain

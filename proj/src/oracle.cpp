#include "xychain/oracle.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace xychain {

int oracle_cap() {
  int cap = kOracleHardCap;
  if (const char* env = std::getenv("XYCHAIN_MAX_N")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 2 && value < cap) cap = static_cast<int>(value);
  }
  return cap;
}

Eigen::VectorXi parity_diagonal(int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  if (n_sites > kOracleHardCap) throw CapacityError("parity diagonal limited to N <= 14");
  const std::uint32_t dim = std::uint32_t{1} << n_sites;
  Eigen::VectorXi parity(dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    const int down = n_sites - std::popcount(b);
    parity(b) = (down % 2 == 0) ? 1 : -1;
  }
  return parity;
}

std::pair<std::vector<int>, std::vector<int>> parity_partition(int n_sites) {
  const Eigen::VectorXi parity = parity_diagonal(n_sites);
  std::vector<int> even, odd;
  even.reserve(static_cast<std::size_t>(parity.size() / 2));
  odd.reserve(static_cast<std::size_t>(parity.size() / 2));
  for (int b = 0; b < parity.size(); ++b) (parity(b) == 1 ? even : odd).push_back(b);
  return {std::move(even), std::move(odd)};
}

std::vector<std::vector<int>> magnetization_partition(int n_sites) {
  if (n_sites < 2) throw ParameterError("n_sites must be >= 2");
  if (n_sites > kOracleHardCap) throw CapacityError("magnetization partition limited to N <= 14");
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n_sites) + 1);
  const int dim = 1 << n_sites;
  for (int b = 0; b < dim; ++b) blocks[static_cast<std::size_t>(std::popcount(static_cast<unsigned>(b)))].push_back(b);
  return blocks;
}

}  // namespace xychain

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace expbasis {

using uint128 = unsigned __int128;

std::string uint128_to_string(uint128 value);

// 0/1 mask with rows packed into 32-bit words. diag_count caches the number
// of all-ones generalized diagonals (the permanent) once computed.
struct BinaryMask {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> row_bits;
  std::optional<uint128> diag_count;

  static BinaryMask make(int rows, int cols);
  bool bit(int r, int c) const { return (row_bits[r] >> c) & 1u; }
  void set(int r, int c) { row_bits[r] |= (1u << c); }
};

// Number of generalized diagonals of ones, i.e. the permanent of the mask.
// Ryser inclusion-exclusion over column subsets; exact for K <= 24.
uint128 permanent_binary(const BinaryMask& mask);

}  // namespace expbasis

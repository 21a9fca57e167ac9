#include "core/permanent.hpp"

#include <algorithm>
#include <bit>

#include "core/errors.hpp"

namespace expbasis {

std::string uint128_to_string(uint128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out += static_cast<char>('0' + static_cast<int>(value % 10));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BinaryMask BinaryMask::make(int rows, int cols) {
  require(rows >= 1 && cols >= 1, ErrorCode::invalid_argument, "empty mask");
  require(cols <= 32, ErrorCode::size_limit, "mask limited to 32 columns");
  BinaryMask m;
  m.rows = rows;
  m.cols = cols;
  m.row_bits.assign(static_cast<std::size_t>(rows), 0u);
  return m;
}

uint128 permanent_binary(const BinaryMask& mask) {
  require(mask.rows == mask.cols, ErrorCode::shape, "permanent requires a square mask");
  const int k = mask.rows;
  require(k <= 24, ErrorCode::size_limit, "permanent limited to K <= 24");

  for (const auto bits : mask.row_bits)
    if (bits == 0) return 0;

  // Ryser with Gray-code subset enumeration. Arithmetic wraps mod 2^128,
  // which is exact because the true permanent is below 2^128 for K <= 24.
  std::vector<std::uint32_t> count(static_cast<std::size_t>(k), 0);
  uint128 total = 0;
  std::uint32_t subset = 0;
  const std::uint32_t limit = 1u << k;
  for (std::uint32_t g = 1; g < limit; ++g) {
    const std::uint32_t gray = g ^ (g >> 1);
    const std::uint32_t changed = gray ^ subset;
    const int j = std::countr_zero(changed);
    const bool added = gray & changed;
    subset = gray;
    for (int r = 0; r < k; ++r)
      if (mask.bit(r, j)) count[r] += added ? 1u : -1u;

    uint128 prod = 1;
    for (int r = 0; r < k && prod != 0; ++r) prod *= count[r];
    if (((k - std::popcount(gray)) & 1) == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

}  // namespace expbasis

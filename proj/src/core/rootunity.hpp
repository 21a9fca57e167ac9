#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/linalg.hpp"

namespace expbasis {

// Matrix whose entries are either zero or N-th roots of unity
// omega^e with omega = exp(-2*pi*i/N). Exponents are kept reduced mod N,
// so materializing and re-reading is lossless.
struct RootOfUnitySpec {
  std::int64_t order = 1;
  int rows = 0;
  int cols = 0;
  std::vector<std::optional<std::int64_t>> exponents;  // row-major, nullopt = 0 entry

  static RootOfUnitySpec make(std::int64_t order, int rows, int cols);
  std::optional<std::int64_t>& at(int r, int c) { return exponents[r * cols + c]; }
  const std::optional<std::int64_t>& at(int r, int c) const { return exponents[r * cols + c]; }
  void set(int r, int c, std::int64_t exponent);

  ComplexMatrix materialize() const;
};

// Exact verdict: true iff det, as an element of the cyclotomic field Q(omega),
// is exactly zero. Integer arithmetic throughout; no floating point.
bool exact_zero_det(const RootOfUnitySpec& spec);

// Coefficients of the N-th cyclotomic polynomial, ascending degree.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n);

// Certificate form: order plus the exponent table with null for zero entries.
nlohmann::json root_of_unity_to_json(const RootOfUnitySpec& spec);
RootOfUnitySpec root_of_unity_from_json(const nlohmann::json& doc);

}  // namespace expbasis

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace expbasis {

// Half-open interval [lo, hi) with rational endpoints inside [0, 1].
// Empty intervals are represented by absence, never by lo == hi.
struct RationalInterval {
  Rational lo;
  Rational hi;
};

// A support set S that is a union of grid cells [l/N, (l+1)/N), l in Z_N.
struct GridSupport {
  std::int64_t modulus = 1;
  std::vector<int> cells;  // sorted, distinct, each in [0, N-1]

  Rational measure() const {
    return Rational(static_cast<std::int64_t>(cells.size()), modulus);
  }
  bool contains(int cell) const;
  bool contains_all(const GridSupport& other) const;
};

// Frequency set Lambda = union_k (N*Z + c_k) with distinct rational offsets
// c_k in [0, N).
struct CosetSystem {
  std::int64_t modulus = 1;
  std::vector<Rational> offsets;

  bool all_integer_offsets() const;
};

// Per-index verdicts for the two necessary conditions of a Riesz basis
// with restricted supports: |S_k| >= D(Lambda_k) and
// D(union of Lambda_l over S_l containing I_k) >= |I_k|.
struct NCReport {
  struct NC1Entry {
    Rational support_measure;  // |S_k|
    Rational density;          // D(Lambda_k)
    bool pass = false;
  };
  struct NC2Entry {
    Rational covering_density;  // D(union of Lambda_l with S_l contains I_k)
    Rational interval_measure;  // |I_k|
    bool pass = false;
  };
  std::vector<NC1Entry> nc1;
  std::vector<NC2Entry> nc2;

  bool pass() const;
};

// Rescales a family of interval unions to a common grid: N is the lcm of all
// reduced endpoint denominators and each output reproduces its input set
// exactly as a union of cells. Idempotent under re-normalization.
std::pair<std::int64_t, std::vector<GridSupport>> normalize_supports(
    const std::vector<std::vector<RationalInterval>>& sets);

Rational beurling_density(const CosetSystem& sys);

NCReport check_necessary_conditions(const std::vector<GridSupport>& base_cells,
                                    const std::vector<GridSupport>& supports,
                                    const std::vector<CosetSystem>& freqs);

// Text formats: one support set per line, intervals "p/q..r/s" separated by
// commas; offsets are comma-separated reduced fractions "p/q".
std::vector<std::vector<RationalInterval>> parse_support_sets(const std::string& text);
std::vector<Rational> parse_offsets(const std::string& text);

// Comma-separated integers ("0,2,1,3").
std::vector<int> parse_int_list(const std::string& text);

GridSupport support_from_cells(std::int64_t modulus, std::vector<int> cells);

}  // namespace expbasis

#pragma once

#include <cstdint>
#include <vector>

#include "core/grid.hpp"
#include "core/linalg.hpp"
#include "core/masked.hpp"
#include "core/permanent.hpp"

namespace expbasis {

// Bijection rho on {0..K-1} stored as the image list.
struct PermutationAssignment {
  std::vector<int> map;

  int size() const { return static_cast<int>(map.size()); }
  int sign() const;  // permutation parity, +1 or -1

  static PermutationAssignment identity(int k);
  static PermutationAssignment from_map(std::vector<int> map);  // validates bijection
};

enum class LemmaSearchMode { exhaustive, first_feasible };

struct LemmaResult {
  PermutationAssignment rho;
  double det_modulus = 0.0;
  double guarantee = 0.0;  // R * |det A| / K!
  uint128 diag_count = 0;  // R
};

// |det((P_rho A) .* M)| for one permutation.
double masked_permuted_det_modulus(const ComplexMatrix& a, const BinaryMask& mask,
                                   const PermutationAssignment& rho);

// Search over permutations for the averaging guarantee
// |det((P_rho A) .* M)| >= R*|det A|/K!. Exhaustive mode returns the
// maximizing rho (lexicographically smallest on ties); first_feasible returns
// the first rho meeting the guarantee.
LemmaResult lemma_search(const ComplexMatrix& a, const BinaryMask& mask, LemmaSearchMode mode);

// Frequency assignment for supports on the N-grid: the k-th set receives the
// coset N*Z + rho(k) with frequencies drawn from {1..K}, and the induced
// masked matrix is certified invertible.
struct Theorem1Result {
  std::int64_t modulus = 1;
  std::vector<int> cells;                // distinguished cell of each set
  std::vector<std::vector<int>> masks;   // cell set of each support
  PermutationAssignment rho;             // frequency of set k is rho.map[k] + 1
  std::vector<CosetSystem> lambdas;      // per set: single coset N*Z + (rho(k)+1 mod N)
  LemmaResult lemma;
  MaskedMatrix matrix;
  Classification classification;
};

Theorem1Result theorem1_construct(std::int64_t modulus, const std::vector<int>& cells,
                                  const std::vector<std::vector<int>>& masks);

// Full pipeline from interval descriptions: normalize onto the lcm grid,
// assign each union cell to the first set covering it, construct frequencies
// for the distinct cells, and distribute the cosets back to the input sets
// (possibly leaving some Lambda_k empty).
struct CorollaryResult {
  std::int64_t modulus = 1;
  std::vector<GridSupport> supports;
  std::vector<int> union_cells;
  std::vector<int> t_assignment;         // source set index per union cell
  Theorem1Result construction;
  std::vector<CosetSystem> lambdas;      // per input set
};

CorollaryResult corollary_construct(const std::vector<std::vector<RationalInterval>>& sets);

}  // namespace expbasis

#include "core/permsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "core/errors.hpp"

namespace expbasis {

int PermutationAssignment::sign() const {
  int s = 1;
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = i + 1; j < map.size(); ++j)
      if (map[i] > map[j]) s = -s;
  return s;
}

PermutationAssignment PermutationAssignment::identity(int k) {
  PermutationAssignment rho;
  rho.map.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) rho.map[i] = i;
  return rho;
}

PermutationAssignment PermutationAssignment::from_map(std::vector<int> map) {
  std::vector<bool> seen(map.size(), false);
  for (int v : map) {
    require(v >= 0 && v < static_cast<int>(map.size()), ErrorCode::invalid_argument,
            "permutation image out of range");
    require(!seen[v], ErrorCode::invalid_argument, "permutation image repeated");
    seen[v] = true;
  }
  PermutationAssignment rho;
  rho.map = std::move(map);
  return rho;
}

double masked_permuted_det_modulus(const ComplexMatrix& a, const BinaryMask& mask,
                                   const PermutationAssignment& rho) {
  const int k = static_cast<int>(a.rows());
  require(a.rows() == a.cols(), ErrorCode::shape, "lemma requires square A");
  require(mask.rows == k && mask.cols == k, ErrorCode::shape, "mask shape mismatch");
  require(rho.size() == k, ErrorCode::shape, "permutation size mismatch");
  ComplexMatrix b = ComplexMatrix::Zero(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      if (mask.bit(r, c)) b(r, c) = a(rho.map[r], c);
  return std::abs(b.partialPivLu().determinant());
}

LemmaResult lemma_search(const ComplexMatrix& a, const BinaryMask& mask, LemmaSearchMode mode) {
  const int k = static_cast<int>(a.rows());
  require(a.rows() == a.cols(), ErrorCode::shape, "lemma requires square A");
  require(mask.rows == k && mask.cols == k, ErrorCode::shape, "mask shape mismatch");
  const int limit = (mode == LemmaSearchMode::exhaustive) ? 10 : 12;
  require(k <= limit, ErrorCode::size_limit,
          "lemma search limited to K <= " + std::to_string(limit));

  const uint128 diag_count = permanent_binary(mask);
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  const double det_a = std::abs(a.partialPivLu().determinant());
  const double guarantee = static_cast<double>(diag_count) * det_a / factorial;

  PermutationAssignment best;
  double best_modulus = -1.0;
  PermutationAssignment rho = PermutationAssignment::identity(k);
  do {
    double dm = masked_permuted_det_modulus(a, mask, rho);
    if (mode == LemmaSearchMode::first_feasible && dm >= guarantee - 1e-9) {
      return LemmaResult{rho, dm, guarantee, diag_count};
    }
    if (dm > best_modulus) {
      best_modulus = dm;
      best = rho;
    }
  } while (std::next_permutation(rho.map.begin(), rho.map.end()));

  // The averaging bound promises a feasible permutation; the maximizer can
  // only miss it by rounding, so it stands in when no candidate cleared the
  // threshold.
  return LemmaResult{best, best_modulus, guarantee, diag_count};
}

namespace {

ComplexMatrix fourier_rows(std::int64_t n, const std::vector<std::int64_t>& frequencies,
                           const std::vector<int>& columns) {
  ComplexMatrix a(frequencies.size(), columns.size());
  for (std::size_t r = 0; r < frequencies.size(); ++r)
    for (std::size_t c = 0; c < columns.size(); ++c) {
      double angle = -2.0 * std::numbers::pi *
                     static_cast<double>((frequencies[r] * columns[c]) % n) /
                     static_cast<double>(n);
      a(r, c) = std::complex<double>(std::cos(angle), std::sin(angle));
    }
  return a;
}

}  // namespace

Theorem1Result theorem1_construct(std::int64_t modulus, const std::vector<int>& cells,
                                  const std::vector<std::vector<int>>& masks) {
  const int k = static_cast<int>(cells.size());
  require(k >= 1, ErrorCode::invalid_argument, "invalid-configuration: no sets");
  require(k <= modulus, ErrorCode::invalid_argument, "invalid-configuration: K > N");
  require(masks.size() == cells.size(), ErrorCode::invalid_argument,
          "invalid-configuration: cells and masks must pair up");

  std::set<int> cell_set;
  for (int c : cells) {
    require(c >= 0 && c < modulus, ErrorCode::invalid_argument,
            "invalid-configuration: cell out of range");
    require(cell_set.insert(c).second, ErrorCode::invalid_argument,
            "invalid-configuration: cells must be distinct");
  }
  for (int i = 0; i < k; ++i) {
    require(!masks[i].empty(), ErrorCode::invalid_argument, "invalid-configuration: empty mask");
    bool has_own = false;
    for (int c : masks[i]) {
      require(cell_set.count(c), ErrorCode::invalid_argument,
              "invalid-configuration: mask cell outside the chosen cells");
      if (c == cells[i]) has_own = true;
    }
    require(has_own, ErrorCode::invalid_argument,
            "invalid-configuration: mask must contain its own cell");
  }

  // Columns are the distinct cells in ascending order; rows carry the
  // candidate frequencies 1..K.
  std::vector<int> columns(cell_set.begin(), cell_set.end());
  std::vector<std::int64_t> frequencies;
  for (int i = 1; i <= k; ++i) frequencies.push_back(i);
  ComplexMatrix a = fourier_rows(modulus, frequencies, columns);

  BinaryMask mask = BinaryMask::make(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      if (std::find(masks[r].begin(), masks[r].end(), columns[c]) != masks[r].end())
        mask.set(r, c);

  Theorem1Result result;
  result.modulus = modulus;
  result.cells = cells;
  result.masks = masks;
  result.lemma = lemma_search(a, mask, LemmaSearchMode::first_feasible);
  result.rho = result.lemma.rho;

  std::vector<Rational> offsets;
  for (int r = 0; r < k; ++r) {
    Rational offset = Rational(result.rho.map[r] + 1).mod(modulus);
    offsets.push_back(offset);
    result.lambdas.push_back(CosetSystem{modulus, {offset}});
  }
  result.matrix = build_masked_matrix(modulus, offsets, masks);
  result.classification = classify_system(result.matrix);
  require(result.classification.verdict == SystemVerdict::riesz_basis, ErrorCode::internal,
          "internal-error: constructed system failed to classify as a Riesz basis");
  return result;
}

CorollaryResult corollary_construct(const std::vector<std::vector<RationalInterval>>& sets) {
  require(!sets.empty(), ErrorCode::invalid_argument, "invalid-input: no sets");
  CorollaryResult result;
  auto [modulus, supports] = normalize_supports(sets);
  result.modulus = modulus;
  result.supports = supports;

  std::set<int> union_set;
  for (const auto& s : supports) union_set.insert(s.cells.begin(), s.cells.end());
  result.union_cells.assign(union_set.begin(), union_set.end());

  // Greedy T-assignment: each union cell is charged to the first set
  // covering it.
  std::vector<std::vector<int>> masks;
  for (int cell : result.union_cells) {
    int source = -1;
    for (std::size_t i = 0; i < supports.size(); ++i) {
      if (supports[i].contains(cell)) {
        source = static_cast<int>(i);
        break;
      }
    }
    result.t_assignment.push_back(source);
    masks.push_back(supports[static_cast<std::size_t>(source)].cells);
  }

  result.construction = theorem1_construct(modulus, result.union_cells, masks);

  result.lambdas.assign(sets.size(), CosetSystem{modulus, {}});
  for (std::size_t i = 0; i < result.union_cells.size(); ++i) {
    int set_index = result.t_assignment[i];
    result.lambdas[static_cast<std::size_t>(set_index)].offsets.push_back(
        Rational(result.construction.rho.map[i] + 1).mod(modulus));
  }
  return result;
}

}  // namespace expbasis

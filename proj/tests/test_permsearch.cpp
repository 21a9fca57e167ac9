#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

#include "core/errors.hpp"
#include "core/permsearch.hpp"

using namespace expbasis;
using cdouble = std::complex<double>;

namespace {

ComplexMatrix random_matrix(int k, std::mt19937_64& rng) {
  auto draw = [&]() { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  ComplexMatrix m(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) m(r, c) = cdouble(draw(), draw());
  return m;
}

BinaryMask random_mask(int k, std::mt19937_64& rng) {
  BinaryMask mask = BinaryMask::make(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      if (rng() % 2) mask.set(r, c);
  return mask;
}

ComplexMatrix example1_rows() {
  // frequencies 1..4 of the N=4 kernel over all four cells
  ComplexMatrix a(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      double angle = -2.0 * std::numbers::pi * (((k + 1) * l) % 4) / 4.0;
      a(k, l) = cdouble(std::cos(angle), std::sin(angle));
    }
  return a;
}

BinaryMask example1_mask() {
  BinaryMask mask = BinaryMask::make(4, 4);
  for (int c : {0, 2}) mask.set(0, c);
  for (int c : {0, 1, 2, 3}) mask.set(1, c);
  for (int c : {0, 2}) mask.set(2, c);
  for (int c : {0, 1, 2, 3}) mask.set(3, c);
  return mask;
}

}  // namespace

TEST_CASE("permutation parity") {
  CHECK(PermutationAssignment::identity(4).sign() == 1);
  CHECK(PermutationAssignment::from_map({1, 0, 2}).sign() == -1);
  CHECK(PermutationAssignment::from_map({1, 2, 0}).sign() == 1);
  CHECK_THROWS_AS(PermutationAssignment::from_map({0, 0, 1}), Error);
  CHECK_THROWS_AS(PermutationAssignment::from_map({0, 3}), Error);
}

TEST_CASE("lemma search on reference inputs") {
  SUBCASE("identity matrix with identity mask") {
    ComplexMatrix a = ComplexMatrix::Identity(3, 3);
    BinaryMask mask = BinaryMask::make(3, 3);
    for (int i = 0; i < 3; ++i) mask.set(i, i);
    LemmaResult r = lemma_search(a, mask, LemmaSearchMode::exhaustive);
    CHECK(r.rho.map == std::vector<int>{0, 1, 2});
    CHECK(r.det_modulus == doctest::Approx(1.0));
    CHECK(r.diag_count == 1);
    CHECK(r.guarantee == doctest::Approx(1.0 / 6.0));
  }

  SUBCASE("all-ones mask: every permutation attains |det A| = guarantee") {
    std::mt19937_64 rng(5);
    ComplexMatrix a = random_matrix(4, rng);
    BinaryMask mask = BinaryMask::make(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) mask.set(r, c);
    LemmaResult r = lemma_search(a, mask, LemmaSearchMode::exhaustive);
    double det_a = std::abs(a.partialPivLu().determinant());
    CHECK(r.guarantee == doctest::Approx(det_a).epsilon(1e-12));
    CHECK(r.det_modulus == doctest::Approx(det_a).epsilon(1e-12));
    CHECK(r.diag_count == 24);
  }

  SUBCASE("four-channel pattern: guarantee 8/3, permuted determinant feasible") {
    ComplexMatrix a = example1_rows();
    CHECK(std::abs(a.partialPivLu().determinant()) == doctest::Approx(16.0).epsilon(1e-12));
    LemmaResult r = lemma_search(a, example1_mask(), LemmaSearchMode::exhaustive);
    CHECK(r.diag_count == 4);
    CHECK(r.guarantee == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(r.det_modulus >= r.guarantee - 1e-9);
    // the published assignment (1,3,2,4), i.e. 0-based (0,2,1,3), is feasible
    double published = masked_permuted_det_modulus(a, example1_mask(),
                                                   PermutationAssignment::from_map({0, 2, 1, 3}));
    CHECK(published >= r.guarantee - 1e-9);
    CHECK(published == doctest::Approx(4.0).epsilon(1e-12));
    // the identity is not
    double id_det = masked_permuted_det_modulus(a, example1_mask(),
                                                PermutationAssignment::identity(4));
    CHECK(id_det < 1e-12);
  }

  SUBCASE("first_feasible meets the guarantee and is deterministic") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      int k = 2 + static_cast<int>(rng() % 4);
      ComplexMatrix a = random_matrix(k, rng);
      BinaryMask mask = random_mask(k, rng);
      LemmaResult r1 = lemma_search(a, mask, LemmaSearchMode::first_feasible);
      LemmaResult r2 = lemma_search(a, mask, LemmaSearchMode::first_feasible);
      CHECK(r1.rho.map == r2.rho.map);
      CHECK(r1.det_modulus >= r1.guarantee - 1e-9);
    }
  }

  SUBCASE("exhaustive maximizer dominates full enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      int k = 2 + static_cast<int>(rng() % 4);  // K <= 5
      ComplexMatrix a = random_matrix(k, rng);
      BinaryMask mask = random_mask(k, rng);
      LemmaResult best = lemma_search(a, mask, LemmaSearchMode::exhaustive);
      PermutationAssignment rho = PermutationAssignment::identity(k);
      do {
        CHECK(best.det_modulus >= masked_permuted_det_modulus(a, mask, rho) - 1e-12);
      } while (std::next_permutation(rho.map.begin(), rho.map.end()));
    }
  }

  SUBCASE("shape and size guards") {
    ComplexMatrix a = ComplexMatrix::Identity(3, 3);
    BinaryMask mask = BinaryMask::make(2, 2);
    CHECK_THROWS_AS(lemma_search(a, mask, LemmaSearchMode::exhaustive), Error);
    ComplexMatrix big = ComplexMatrix::Identity(11, 11);
    BinaryMask big_mask = BinaryMask::make(11, 11);
    for (int i = 0; i < 11; ++i) big_mask.set(i, i);
    CHECK_THROWS_AS(lemma_search(big, big_mask, LemmaSearchMode::exhaustive), Error);
  }
}

TEST_CASE("signed averaging identity over the symmetric group") {
  // sum over rho of sgn(rho) det((P_rho A) .* M) equals R * det(A)
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    int k = 2 + static_cast<int>(rng() % 4);  // K <= 5
    ComplexMatrix a = random_matrix(k, rng);
    BinaryMask mask = random_mask(k, rng);
    cdouble total(0, 0);
    PermutationAssignment rho = PermutationAssignment::identity(k);
    do {
      ComplexMatrix b = ComplexMatrix::Zero(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
          if (mask.bit(r, c)) b(r, c) = a(rho.map[static_cast<std::size_t>(r)], c);
      total += static_cast<double>(rho.sign()) * b.partialPivLu().determinant();
    } while (std::next_permutation(rho.map.begin(), rho.map.end()));
    cdouble expected = static_cast<double>(permanent_binary(mask)) *
                       a.partialPivLu().determinant();
    double scale = std::max(1.0, std::abs(expected));
    CHECK(std::abs(total - expected) / scale < 1e-8);
  }
}

TEST_CASE("frequency assignment construction") {
  SUBCASE("four-channel pattern") {
    Theorem1Result r = theorem1_construct(4, {0, 1, 2, 3},
                                          {{0, 2}, {0, 1, 2, 3}, {0, 2}, {0, 1, 2, 3}});
    CHECK(r.classification.verdict == SystemVerdict::riesz_basis);
    CHECK(r.lambdas.size() == 4);
    // frequencies are a permutation of 1..4
    std::vector<int> freq;
    for (int v : r.rho.map) freq.push_back(v + 1);
    std::sort(freq.begin(), freq.end());
    CHECK(freq == std::vector<int>{1, 2, 3, 4});
  }

  SUBCASE("single set on a three-cell grid") {
    Theorem1Result r = theorem1_construct(3, {2}, {{2}});
    CHECK(r.classification.verdict == SystemVerdict::riesz_basis);
    CHECK(r.lambdas[0].offsets.front() == Rational(1));
  }

  SUBCASE("full masks: all six permutations classify as bases") {
    // construction must succeed, and indeed every permutation works
    Theorem1Result r = theorem1_construct(3, {0, 1, 2},
                                          {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
    CHECK(r.classification.verdict == SystemVerdict::riesz_basis);
    std::vector<int> perm{0, 1, 2};
    do {
      std::vector<Rational> offsets;
      for (int v : perm) offsets.emplace_back((v + 1) % 3);
      MaskedMatrix m = build_masked_matrix(3, offsets, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
      CHECK(classify_system(m).verdict == SystemVerdict::riesz_basis);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(theorem1_construct(4, {0, 0}, {{0}, {0}}), Error);       // repeated cells
    CHECK_THROWS_AS(theorem1_construct(4, {0, 1}, {{1}, {0, 1}}), Error);    // missing own cell
    CHECK_THROWS_AS(theorem1_construct(4, {0, 1}, {{0, 2}, {1}}), Error);    // outside union
    CHECK_THROWS_AS(theorem1_construct(2, {0, 1, 1}, {{0}, {1}, {1}}), Error);  // K > N
  }

  SUBCASE("construction re-verifies through classification on random inputs") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      int n = 2 + static_cast<int>(rng() % 5);
      int k = 1 + static_cast<int>(rng() % n);
      std::vector<int> cells;
      for (int c = 0; c < n; ++c) cells.push_back(c);
      std::shuffle(cells.begin(), cells.end(), rng);
      cells.resize(static_cast<std::size_t>(k));
      std::vector<std::vector<int>> masks;
      for (int i = 0; i < k; ++i) {
        std::vector<int> mask{cells[static_cast<std::size_t>(i)]};
        for (int j = 0; j < k; ++j)
          if (j != i && rng() % 2) mask.push_back(cells[static_cast<std::size_t>(j)]);
        std::sort(mask.begin(), mask.end());
        masks.push_back(mask);
      }
      Theorem1Result r = theorem1_construct(n, cells, masks);
      CHECK(r.classification.verdict == SystemVerdict::riesz_basis);
    }
  }
}

TEST_CASE("interval pipeline") {
  SUBCASE("whole interval") {
    CorollaryResult r = corollary_construct({{{Rational(0), Rational(1)}}});
    CHECK(r.modulus == 1);
    CHECK(r.lambdas.size() == 1);
    CHECK(r.lambdas[0].offsets == std::vector<Rational>{Rational(0)});
    CHECK(r.construction.classification.verdict == SystemVerdict::riesz_basis);
  }

  SUBCASE("two overlapping sets on the six-cell grid") {
    CorollaryResult r = corollary_construct({{{Rational(0), Rational(1, 2)}},
                                             {{Rational(1, 3), Rational(1)}}});
    CHECK(r.modulus == 6);
    CHECK(r.union_cells == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(r.t_assignment == std::vector<int>{0, 0, 0, 1, 1, 1});
    CHECK(r.construction.classification.verdict == SystemVerdict::riesz_basis);
    // covering input: the assigned offsets partition Z_6
    std::vector<int> all_offsets;
    for (const auto& l : r.lambdas)
      for (const auto& o : l.offsets) all_offsets.push_back(static_cast<int>(o.num()));
    std::sort(all_offsets.begin(), all_offsets.end());
    CHECK(all_offsets == std::vector<int>{0, 1, 2, 3, 4, 5});
  }

  SUBCASE("identical sets leave the second frequency set empty") {
    CorollaryResult r = corollary_construct({{{Rational(0), Rational(1, 2)}},
                                             {{Rational(0), Rational(1, 2)}}});
    CHECK(r.modulus == 2);
    CHECK(r.lambdas[0].offsets.size() == 1);
    CHECK(r.lambdas[1].offsets.empty());
  }

  SUBCASE("empty input rejected") {
    CHECK_THROWS_AS(corollary_construct({}), Error);
  }
}
